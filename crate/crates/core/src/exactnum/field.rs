use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::basis::{Basis, BasisSymbol};
use super::interval::RationalInterval;
use super::rational::{format_rational, magnitude_bits, parse_rational, Rational};
use super::ExactError;

/// Fractional bits of the cached enclosure used to short-circuit comparisons.
const APPROX_BITS: u64 = 64;
/// Starting precision for sign determination; doubled until decisive.
const START_BITS: u64 = 64;

/// An exact real number `c_0 + c_1 sqrt(p_1) + ... + c_k sqrt(p_k)` with rational
/// coefficients over a fixed [`Basis`].
///
/// Equality is coefficient equality. Ordering is decided numerically by
/// refining interval enclosures of the difference, which always terminates
/// because distinct coefficient vectors denote distinct reals.
///
/// Arithmetic operators panic if the operands live over different bases; the
/// `checked_*` and [`FieldElement::try_cmp`] variants report it instead.
#[derive(Clone)]
pub struct FieldElement {
    basis: Arc<Basis>,
    coeffs: Vec<Rational>,
    approx: OnceLock<Approx>,
}

/// `lo <= value * 2^APPROX_BITS <= hi`.
#[derive(Clone, Debug)]
struct Approx {
    lo: BigInt,
    hi: BigInt,
}

thread_local! {
    static SQRT_FLOOR: RefCell<HashMap<(u64, u64), BigInt>> = RefCell::new(HashMap::new());
}

/// `floor(sqrt(p) * 2^bits)`.
fn sqrt_floor_scaled(p: u64, bits: u64) -> BigInt {
    SQRT_FLOOR.with(|cache| {
        cache
            .borrow_mut()
            .entry((p, bits))
            .or_insert_with(|| (BigInt::from(p) << (2 * bits)).sqrt())
            .clone()
    })
}

/// Integer bounds `(lo, hi, den)` with `lo <= x * den * 2^bits <= hi`.
fn scaled_bounds(symbols: &[BasisSymbol], coeffs: &[Rational], bits: u64) -> (BigInt, BigInt, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (sym, q) in symbols.iter().zip(coeffs) {
        if q.is_zero() {
            continue;
        }
        let c = q.numer() * (&den / q.denom());
        match *sym {
            BasisSymbol::Unit => {
                let exact = &c << bits;
                lo += &exact;
                hi += exact;
            }
            BasisSymbol::Sqrt(p) => {
                // sqrt(p) is irrational, so floor < sqrt(p) * 2^bits < floor + 1.
                let floor = sqrt_floor_scaled(p, bits);
                let ceil = &floor + 1;
                if c.is_positive() {
                    lo += &c * &floor;
                    hi += &c * &ceil;
                } else {
                    lo += &c * &ceil;
                    hi += &c * &floor;
                }
            }
        }
    }
    (lo, hi, den)
}

fn sign_of(symbols: &[BasisSymbol], coeffs: &[Rational]) -> Ordering {
    if coeffs.iter().all(Zero::is_zero) {
        return Ordering::Equal;
    }
    let mut bits = START_BITS;
    loop {
        let (lo, hi, _) = scaled_bounds(symbols, coeffs, bits);
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        bits *= 2;
    }
}

impl FieldElement {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        Self::from_coeffs_unchecked(basis.clone(), vec![Rational::zero(); basis.len()])
    }

    pub fn from_rational(basis: &Arc<Basis>, q: Rational) -> Result<Self, ExactError> {
        let unit = basis
            .position(BasisSymbol::Unit)
            .ok_or(ExactError::NoUnit)?;
        let mut coeffs = vec![Rational::zero(); basis.len()];
        coeffs[unit] = q;
        Ok(Self::from_coeffs_unchecked(basis.clone(), coeffs))
    }

    pub fn from_integer(basis: &Arc<Basis>, n: i64) -> Result<Self, ExactError> {
        Self::from_rational(basis, Rational::from_integer(BigInt::from(n)))
    }

    /// The basis vector at `index` (for example `sqrt(5)`).
    pub fn basis_symbol(basis: &Arc<Basis>, index: usize) -> Result<Self, ExactError> {
        if index >= basis.len() {
            return Err(ExactError::IndexOutOfRange {
                index,
                len: basis.len(),
            });
        }
        let mut coeffs = vec![Rational::zero(); basis.len()];
        coeffs[index] = Rational::one();
        Ok(Self::from_coeffs_unchecked(basis.clone(), coeffs))
    }

    /// `sqrt(p)` for a prime present in the basis.
    pub fn sqrt_of(basis: &Arc<Basis>, p: u64) -> Result<Self, ExactError> {
        let index = basis
            .position(BasisSymbol::Sqrt(p))
            .ok_or(ExactError::MissingSymbol(BasisSymbol::Sqrt(p)))?;
        Self::basis_symbol(basis, index)
    }

    pub fn from_coeffs(basis: &Arc<Basis>, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if coeffs.len() != basis.len() {
            return Err(ExactError::LengthMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        Ok(Self::from_coeffs_unchecked(basis.clone(), coeffs))
    }

    fn from_coeffs_unchecked(basis: Arc<Basis>, coeffs: Vec<Rational>) -> Self {
        FieldElement {
            basis,
            coeffs,
            approx: OnceLock::new(),
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when every irrational coefficient vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        let mut value = None;
        for (sym, q) in self.basis.symbols().iter().zip(&self.coeffs) {
            match sym {
                BasisSymbol::Unit => value = Some(q.clone()),
                BasisSymbol::Sqrt(_) if !q.is_zero() => return None,
                BasisSymbol::Sqrt(_) => {}
            }
        }
        Some(value.unwrap_or_else(Rational::zero))
    }

    pub fn same_basis(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }

    fn ensure_same_basis(&self, other: &FieldElement) -> Result<(), ExactError> {
        if self.same_basis(other) {
            Ok(())
        } else {
            Err(ExactError::BasisMismatch)
        }
    }

    fn zip_with(&self, other: &FieldElement, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(a, b))
            .collect();
        Self::from_coeffs_unchecked(self.basis.clone(), coeffs)
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<Self, ExactError> {
        self.ensure_same_basis(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<Self, ExactError> {
        self.ensure_same_basis(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * q).collect();
        Self::from_coeffs_unchecked(self.basis.clone(), coeffs)
    }

    pub fn half(&self) -> Self {
        self.scale(&Rational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `self + q` for a rational `q`.
    pub fn add_rational(&self, q: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        if let Some(unit) = self.basis.position(BasisSymbol::Unit) {
            coeffs[unit] += q;
        }
        Self::from_coeffs_unchecked(self.basis.clone(), coeffs)
    }

    pub fn try_cmp(&self, other: &FieldElement) -> Result<Ordering, ExactError> {
        self.ensure_same_basis(other)?;
        if self.coeffs == other.coeffs {
            return Ok(Ordering::Equal);
        }
        let (a, b) = (self.approx(), other.approx());
        if a.hi < b.lo {
            return Ok(Ordering::Less);
        }
        if a.lo > b.hi {
            return Ok(Ordering::Greater);
        }
        let diff: Vec<Rational> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        Ok(sign_of(self.basis.symbols(), &diff))
    }

    pub fn signum(&self) -> Ordering {
        sign_of(self.basis.symbols(), &self.coeffs)
    }

    fn approx(&self) -> &Approx {
        self.approx.get_or_init(|| {
            let (lo, hi, den) = scaled_bounds(self.basis.symbols(), &self.coeffs, APPROX_BITS);
            Approx {
                lo: lo.div_floor(&den),
                hi: -((-hi).div_floor(&den)),
            }
        })
    }

    /// A rational interval of width at most `2^-precision` containing the value.
    /// Enclosures are nested as `precision` grows.
    pub fn enclosure(&self, precision: u64) -> RationalInterval {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let spread: Rational = self
            .coeffs
            .iter()
            .map(|q| Rational::from_integer((q.numer() * (&den / q.denom())).abs()))
            .sum();
        let bits = precision + magnitude_bits(&spread);
        let (lo, hi, den) = scaled_bounds(self.basis.symbols(), &self.coeffs, bits);
        let scale = den << bits;
        RationalInterval::new(Rational::new(lo, scale.clone()), Rational::new(hi, scale))
    }

    /// Coefficients paired with their basis symbols.
    pub fn decompose(&self) -> Vec<(BasisSymbol, Rational)> {
        self.basis
            .symbols()
            .iter()
            .copied()
            .zip(self.coeffs.iter().cloned())
            .collect()
    }

    /// Decimal approximation for human-facing output only.
    pub fn approx_f64(&self) -> f64 {
        let iv = self.enclosure(60);
        ((iv.lo() + iv.hi()) / Rational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn parse_coeffs<S: AsRef<str>>(basis: &Arc<Basis>, items: &[S]) -> Result<Self, ExactError> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coeffs(basis, coeffs)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.same_basis(other)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Panics on a basis mismatch; see [`FieldElement::try_cmp`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("compared field elements over different bases")
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("added field elements over different bases")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("subtracted field elements over different bases")
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        FieldElement::from_coeffs_unchecked(self.basis.clone(), coeffs)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (sym, q) in self.basis.symbols().iter().zip(&self.coeffs) {
            if q.is_zero() {
                continue;
            }
            let negative = q.numer().sign() == Sign::Minus;
            let magnitude = q.abs();
            match (wrote, negative) {
                (false, true) => f.write_str("-")?,
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, false) => {}
            }
            match sym {
                BasisSymbol::Unit => write!(f, "{magnitude}")?,
                BasisSymbol::Sqrt(_) if magnitude.is_one() => write!(f, "{sym}")?,
                BasisSymbol::Sqrt(_) => write!(f, "{magnitude}*{sym}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// Wire form: `{ "basis": ["1", "sqrt(2)"], "coeffs": ["p/q", ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldElementJson {
    pub basis: Vec<String>,
    pub coeffs: Vec<String>,
}

impl From<&FieldElement> for FieldElementJson {
    fn from(x: &FieldElement) -> Self {
        FieldElementJson {
            basis: x.basis.to_strings(),
            coeffs: x.coeff_strings(),
        }
    }
}

impl TryFrom<FieldElementJson> for FieldElement {
    type Error = ExactError;

    fn try_from(json: FieldElementJson) -> Result<Self, Self::Error> {
        let basis = Arc::new(Basis::parse_strings(&json.basis)?);
        FieldElement::parse_coeffs(&basis, &json.coeffs)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldElementJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = FieldElementJson::deserialize(deserializer)?;
        FieldElement::try_from(json).map_err(serde::de::Error::custom)
    }
}
