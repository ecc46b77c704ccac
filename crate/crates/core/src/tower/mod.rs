//! `Z_p`-towers: ramification profiles, genus sequences, stability,
//! L-degrees and Frobenius elements.

mod datum;
mod frobenius;
mod genus;
mod ldegree;
mod profile;
mod stability;

pub use datum::{place_label, unit_root_family, NcNu, TowerDatum};
pub use frobenius::frobenius_at;
pub use genus::{genus_sequence, lower_bound, GenusReport, LevelRow};
pub use ldegree::{l_degree, LDegree};
pub use profile::{PlaceData, PlaceProfile, RamificationProfile, Stream, SupDeclaration};
pub use stability::{stability_classify, Basis, Condition, Outcome, PlaceStability, StabilityReport, Verdict};
