//! Commuting graphs of finite permutation groups, and an exact model of a
//! valuation-induced unit set inside the rational Hamilton quaternions.
//!
//! The group side enumerates a permutation group, records conjugacy classes
//! with explicit conjugator witnesses, and answers distance queries on the
//! commuting graph from one BFS row per class. The quaternion side is
//! generic over the scalar type; the checkers run on [`RationalQuaternion`].

pub mod checks;
pub mod corpus;
pub mod distance;
pub mod driver;
pub mod gf;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod quat;
pub mod report;
pub mod sampler;
pub mod valuation;

pub use distance::Distance;
pub use graph::{BalancedWitness, CommGraph, DistanceRow, Verdict};
pub use group::{enumerate, Group, GroupSpec};
pub use perm::Permutation;
pub use quat::Quaternion;

/// Exact rationals, always kept in lowest terms.
pub type Rational = dashu_ratio::RBig;

/// Quaternions over ℚ; every checker works in this type.
pub type RationalQuaternion = Quaternion<Rational>;

pub type QuaternionF64 = Quaternion<f64>;

pub type QuaternionF32 = Quaternion<f32>;

/// `p/q` in lowest terms. Panics if `q` is zero.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::from_parts_signed(p.into(), q.into())
}
