//! Seeded random rational quaternions.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`; each
//! checker draws from its own ChaCha stream id so adding samples to one
//! checker never perturbs another. Components are `p/q` with `p` uniform
//! in `[-B, B]` and `q` uniform in `[1, B]`. Cell-targeted samples are
//! drawn this way, then rescaled by a power of 2 (which shifts `w` by an
//! even amount); for `U` the draw is rejected until `w` is even.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quat::Quaternion;
use crate::valuation::{pow2, w, Cell};
use crate::{ratio, Rational, RationalQuaternion};

pub const DEFAULT_BOUND: i64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub bound: i64,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            bound: DEFAULT_BOUND,
        }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.bound = bound.max(1);
        self
    }

    pub fn sampler(&self, stream: u64) -> QuatSampler {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        QuatSampler {
            rng,
            bound: self.bound,
        }
    }
}

pub struct QuatSampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl QuatSampler {
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        ratio(p, q)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn quaternion(&mut self) -> RationalQuaternion {
        Quaternion::new(
            self.rational(),
            self.rational(),
            self.rational(),
            self.rational(),
        )
    }

    pub fn nonzero(&mut self) -> RationalQuaternion {
        loop {
            let q = self.quaternion();
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// Nonzero with nonzero pure part.
    pub fn noncentral(&mut self) -> RationalQuaternion {
        loop {
            let q = self.quaternion();
            if !q.is_scalar() {
                return q;
            }
        }
    }

    pub fn in_cell(&mut self, cell: Cell) -> RationalQuaternion {
        let q = self.nonzero();
        let wq = w(&q).expect("nonzero");
        let extra = self.rng.gen_range(0..3);
        let shift = match cell {
            Cell::U if wq % 2 != 0 => return self.in_cell(Cell::U),
            Cell::U => -wq / 2,
            Cell::M => -(wq.div_euclid(2) + 1 + extra),
            Cell::NBar => (-wq).div_euclid(2) + 1 + extra,
        };
        let out = q.scale(&pow2(shift));
        debug_assert_eq!(crate::valuation::classify(&out), Ok(cell));
        out
    }

    /// Uniformly `U` or `M`.
    pub fn in_n(&mut self) -> RationalQuaternion {
        let cell = if self.rng.gen_bool(0.5) {
            Cell::U
        } else {
            Cell::M
        };
        self.in_cell(cell)
    }

    /// Uniformly `M` or `NBar`.
    pub fn outside_u(&mut self) -> RationalQuaternion {
        let cell = if self.rng.gen_bool(0.5) {
            Cell::M
        } else {
            Cell::NBar
        };
        self.in_cell(cell)
    }

    pub fn any_cell(&mut self) -> RationalQuaternion {
        let cell = match self.rng.gen_range(0..3) {
            0 => Cell::U,
            1 => Cell::M,
            _ => Cell::NBar,
        };
        self.in_cell(cell)
    }
}
