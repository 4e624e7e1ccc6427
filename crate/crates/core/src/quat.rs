//! Hamilton quaternions `a + bi + cj + dk` (`i² = j² = -1`, `k = ij`) over
//! any scalar implementing [`num_traits::Num`]. Exact work uses
//! [`crate::RationalQuaternion`]; floats are fine for quick experiments.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuatError {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,
    #[error("operation undefined on the zero quaternion")]
    Zero,
    #[error("no nonzero solution to the conjugation system")]
    NoConjugator,
}

/// Bound shared by every scalar the quaternion code is generic over.
pub trait Scalar: Num + Clone + Neg<Output = Self> {}

impl<T: Num + Clone + Neg<Output = T>> Scalar for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Quaternion<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_scalar(a: T) -> Self {
        Self::new(a, T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn basis(index: usize) -> Self {
        match index {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::j(),
            3 => Self::k(),
            _ => panic!("basis index {index} out of range"),
        }
    }

    pub fn components(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn from_components(v: [T; 4]) -> Self {
        let [a, b, c, d] = v;
        Self::new(a, b, c, d)
    }

    /// True when the pure part `bi + cj + dk` vanishes.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    /// Reduced norm `a² + b² + c² + d²`.
    pub fn nrd(&self) -> T {
        self.a.clone() * self.a.clone()
            + self.b.clone() * self.b.clone()
            + self.c.clone() * self.c.clone()
            + self.d.clone() * self.d.clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    /// `conj(q) / nrd(q)`.
    pub fn inv(&self) -> Result<Self, QuatError> {
        if self.is_zero() {
            return Err(QuatError::ZeroInverse);
        }
        let n = self.nrd();
        let c = self.conj();
        Ok(Self::new(
            c.a / n.clone(),
            c.b / n.clone(),
            c.c / n.clone(),
            c.d / n,
        ))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `g⁻¹ q g`.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self, QuatError> {
        Ok(g.inv()? * self.clone() * g.clone())
    }

    /// `g⁻¹ h⁻¹ g h`.
    pub fn commutator(g: &Self, h: &Self) -> Result<Self, QuatError> {
        Ok(g.inv()? * h.inv()? * g.clone() * h.clone())
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let Self { a, b, c, d } = self;
        let Self {
            a: e,
            b: f,
            c: g,
            d: h,
        } = o;
        Self::new(
            a.clone() * e.clone()
                - b.clone() * f.clone()
                - c.clone() * g.clone()
                - d.clone() * h.clone(),
            a.clone() * f.clone() + b.clone() * e.clone() + c.clone() * h.clone()
                - d.clone() * g.clone(),
            a.clone() * g.clone() - b.clone() * h.clone()
                + c.clone() * e.clone()
                + d.clone() * f.clone(),
            a * h + b * g - c * f + d * e,
        )
    }
}

impl<T: Scalar> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::from_scalar(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.is_scalar()
    }
}

impl<T: Scalar> One for Quaternion<T> {
    fn one() -> Self {
        Self::from_scalar(T::one())
    }
}

impl<T: fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.a, self.b, self.c, self.d)
    }
}

pub fn q_add<T: Scalar>(p: &Quaternion<T>, q: &Quaternion<T>) -> Quaternion<T> {
    p.clone() + q.clone()
}

pub fn q_mul<T: Scalar>(p: &Quaternion<T>, q: &Quaternion<T>) -> Quaternion<T> {
    p.clone() * q.clone()
}

pub fn q_conj<T: Scalar>(q: &Quaternion<T>) -> Quaternion<T> {
    q.conj()
}

pub fn q_inv<T: Scalar>(q: &Quaternion<T>) -> Result<Quaternion<T>, QuatError> {
    q.inv()
}

pub fn nrd<T: Scalar>(q: &Quaternion<T>) -> T {
    q.nrd()
}

/// A conjugator exhibiting the reduced norm as a product of two conjugates:
/// `g⁻¹ q g = conj(q)`, hence `nrd(q) = q · (g⁻¹ q g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatorWitness<T> {
    pub conjugator: Quaternion<T>,
    /// `q` was scalar: `conj(q) = q`, `g = 1`, and `nrd(q) = q · q`.
    pub scalar: bool,
}

/// Finds `g ≠ 0` with `g q = conj(q) g` by solving the 4×4 linear system
/// over the scalar field. The solution space is 2-dimensional for
/// non-scalar `q`; the first free coordinate is set to 1.
pub fn wedderburn_conjugate<T: Scalar>(
    q: &Quaternion<T>,
) -> Result<ConjugatorWitness<T>, QuatError> {
    if q.is_zero() {
        return Err(QuatError::Zero);
    }
    if q.is_scalar() {
        return Ok(ConjugatorWitness {
            conjugator: Quaternion::one(),
            scalar: true,
        });
    }
    let qc = q.conj();
    // Column k is the image of basis vector e_k under g ↦ g q − conj(q) g.
    let columns: Vec<Quaternion<T>> = (0..4)
        .map(|k| {
            let e = Quaternion::basis(k);
            e.clone() * q.clone() - qc.clone() * e
        })
        .collect();
    let matrix: Vec<Vec<T>> = (0..4)
        .map(|row| {
            columns
                .iter()
                .map(|col| col.components()[row].clone())
                .collect()
        })
        .collect();
    let g = nullspace_vector(matrix).ok_or(QuatError::NoConjugator)?;
    Ok(ConjugatorWitness {
        conjugator: Quaternion::from_components(g),
        scalar: false,
    })
}

/// Some nonzero vector in the kernel of a square matrix over a field, via
/// reduced row echelon form. `None` if the matrix is nonsingular.
fn nullspace_vector<T: Scalar>(mut m: Vec<Vec<T>>) -> Option<[T; 4]> {
    let cols = 4;
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() / lead.clone();
        }
        let pivot_row = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v: [T; 4] = std::array::from_fn(|_| T::zero());
    v[free] = T::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}
