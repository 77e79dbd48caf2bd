//! Instances shared by the benchmarks.

use mrap_core::{FieldDesc, MRInstance};

/// `x² + y² + z² = dxyz` over `Q(sqrt(radicand))`.
pub fn markoff(radicand: i64, d: i64) -> MRInstance {
    let field = FieldDesc::new(radicand).expect("nonzero radicand");
    MRInstance::from_ints(field, 1, 1, 1, d).expect("nonzero d")
}

/// A spread of fields: rational, imaginary, and real with small and large
/// fundamental units.
pub const RADICANDS: &[i64] = &[1, -1, 2, 5, 41, 94];
