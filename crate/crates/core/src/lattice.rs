//! Intersection lattices, divisor classes and formal rational divisors.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("duplicate basis label `{0}`")]
    DuplicateBasisName(String),
}

/// A nondegenerate symmetric integral bilinear form together with the class
/// of the canonical divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    basis_names: Vec<String>,
    gram: Vec<Vec<BigInt>>,
    canonical: Vec<BigInt>,
}

impl IntersectionLattice {
    pub fn new(
        basis_names: Vec<String>,
        gram: Vec<Vec<BigInt>>,
        canonical: Vec<BigInt>,
    ) -> Result<Self, LatticeError> {
        let n = basis_names.len();
        if gram.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: gram.len(),
            });
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        if canonical.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: canonical.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
            if basis_names[..i].contains(&basis_names[i]) {
                return Err(LatticeError::DuplicateBasisName(basis_names[i].clone()));
            }
        }
        if n > 0 && linalg::determinant(&linalg::to_rational_matrix(&gram)).is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self {
            basis_names,
            gram,
            canonical,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(
        names: &[&str],
        gram: &[&[i64]],
        canonical: &[i64],
    ) -> Result<Self, LatticeError> {
        Self::new(
            names.iter().map(|s| String::from(*s)).collect(),
            gram.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            canonical.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn canonical(&self) -> &[BigInt] {
        &self.canonical
    }

    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::from_integers(&self.canonical)
    }

    pub fn basis_class(&self, i: usize) -> DivisorClass {
        DivisorClass::unit(self.rank(), i)
    }

    fn check(&self, x: &DivisorClass) -> Result<(), LatticeError> {
        if x.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `xᵀ · gram · y`.
    pub fn pairing(&self, x: &DivisorClass, y: &DivisorClass) -> Result<Rational, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        let mut total = Rational::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                let g = &self.gram[i][j];
                if g.is_zero() || yj.is_zero() {
                    continue;
                }
                total += xi * yj * Rational::from_integer(g.clone());
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, x: &DivisorClass) -> Result<Rational, LatticeError> {
        self.pairing(x, x)
    }

    pub fn canonical_pairing(&self, x: &DivisorClass) -> Result<Rational, LatticeError> {
        self.pairing(&self.canonical_class(), x)
    }

    /// Arithmetic genus by adjunction: `(c² + K·c)/2 + 1`.
    pub fn adjunction_pa(&self, c: &DivisorClass) -> Result<Rational, LatticeError> {
        let two = rational::int(2);
        Ok((self.self_intersection(c)? + self.canonical_pairing(c)?) / two + Rational::one())
    }

    /// Equality of classes. The form is nondegenerate, so this is numerical
    /// equivalence.
    pub fn classes_equal(&self, x: &DivisorClass, y: &DivisorClass) -> Result<bool, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(x == y)
    }

    pub fn gram_rational(&self) -> linalg::Matrix {
        linalg::to_rational_matrix(&self.gram)
    }

    /// Gram matrix of a list of classes.
    pub fn gram_of(&self, classes: &[&DivisorClass]) -> Result<linalg::Matrix, LatticeError> {
        classes
            .iter()
            .map(|x| classes.iter().map(|y| self.pairing(x, y)).collect())
            .collect()
    }
}

/// A rational vector over the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass(pub Vec<Rational>);

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        Self(alloc::vec![Rational::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_integers(v: &[BigInt]) -> Self {
        Self(v.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(rational::is_integral)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// The integer coordinates, if every coordinate is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| rational::is_integral(x).then(|| x.numer().clone()))
            .collect()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Appends a zero coordinate (the image under a blow-up pullback).
    pub fn extended(&self, extra: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(core::iter::repeat_n(Rational::zero(), extra));
        Self(v)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "adding classes of different rank");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "subtracting classes of different rank");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&rational::fmt_rational(x))?;
        }
        f.write_str(")")
    }
}

/// A formal rational combination of named curves. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QDivisor {
    terms: BTreeMap<String, Rational>,
}

impl QDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let mut d = Self::new();
        for (name, c) in terms {
            d.add_term(name, c);
        }
        d
    }

    pub fn add_term(&mut self, name: impl Into<String>, c: Rational) {
        let name = name.into();
        let entry = self.terms.entry(name.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&name);
        }
    }

    pub fn coefficient(&self, name: &str) -> Rational {
        self.terms.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &String> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| rational::sign(c) > 0)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, x)| (n.clone(), x * c)))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(n.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&-Rational::one()))
    }

    /// Coefficientwise round-down.
    pub fn floor(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(n, c)| (n.clone(), Rational::from_integer(rational::floor(c)))),
        )
    }

    /// Coefficientwise round-up.
    pub fn ceil(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(n, c)| (n.clone(), Rational::from_integer(rational::ceil(c)))),
        )
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (name, c)) in self.terms.iter().enumerate() {
            let negative = rational::sign(c) < 0;
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{} ", rational::fmt_rational(&abs))?;
            }
            f.write_str(name)?;
        }
        Ok(())
    }
}
