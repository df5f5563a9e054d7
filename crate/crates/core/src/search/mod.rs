//! Exhaustive search for complementary subalgebras over small prime fields,
//! used as an oracle independent of the symbolic derivations.

pub mod group;
mod orbits;
mod patterns;
mod solve;

pub use orbits::{
    brute_force_complements, coverage_report, entries_for, enumerate_complements_fp, group_sweep,
    orbit_partition, soundness_report, specializations, Enumeration, OrbitReport, Orbits,
    SearchOptions, SoundnessReport, Specialization, SweepResult, SweepWitness,
};
pub use patterns::{builtin_patterns, pattern, pattern_names, Cell, PivotPattern};
pub use solve::solve_mod_p;
