//! Bundled example models and proof scripts.

/// The fuzzy muddy children model before any announcement.
pub const MUDDY_I: &str = include_str!("../assets/muddy_I.dlm");
/// Panel I after announcing that at least one child is muddy.
pub const MUDDY_II: &str = include_str!("../assets/muddy_II.dlm");
/// The four-state panel drawn after the second announcement.
pub const MUDDY_III: &str = include_str!("../assets/muddy_III.dlm");

/// Two premises lifted to a conjunction of threshold claims.
pub const GAMMA_GEQ: &str = include_str!("../assets/gamma_geq.dlp");
/// Announcement over a negation, reduced to its translation.
pub const NEG_CASE: &str = include_str!("../assets/neg_case.dlp");
/// Announcement over an atom, reduced to its translation without premises.
pub const ATOM_CASE: &str = include_str!("../assets/atom_case.dlp");
