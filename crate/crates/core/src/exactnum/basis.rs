use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One coordinate of the vector space: the rational unit or `sqrt(p)` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    Unit,
    Sqrt(u64),
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::Unit => f.write_str("1"),
            BasisSymbol::Sqrt(p) => write!(f, "sqrt({p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("unrecognised basis symbol {0:?}")]
    Symbol(String),
    #[error("basis must start with the unit symbol \"1\"")]
    MissingUnit,
    #[error("unit symbol may appear only once, first")]
    MisplacedUnit,
    #[error("sqrt({0}) is not a prime")]
    NotPrime(u64),
    #[error("square-root primes must strictly increase")]
    Unordered,
    #[error("sqrt({0}) exceeds the supported prime range")]
    TooLarge(u64),
}

impl FromStr for BasisSymbol {
    type Err = BasisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "1" {
            return Ok(BasisSymbol::Unit);
        }
        let inner = s
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| BasisError::Symbol(s.to_string()))?;
        let canonical = !inner.is_empty()
            && inner.bytes().all(|b| b.is_ascii_digit())
            && !inner.starts_with('0');
        if !canonical {
            return Err(BasisError::Symbol(s.to_string()));
        }
        let p = inner
            .parse::<u64>()
            .map_err(|_| BasisError::Symbol(s.to_string()))?;
        Ok(BasisSymbol::Sqrt(p))
    }
}

/// Ordered coordinates `(1, sqrt(p_1), sqrt(p_2), ...)` with strictly increasing
/// primes. Square roots of distinct primes together with 1 are linearly
/// independent over the rationals, so coefficient vectors are unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Basis {
    symbols: Vec<BasisSymbol>,
}

const MAX_PRIME: u64 = 1 << 32;

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn first_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(count).collect()
}

impl Basis {
    pub fn new(symbols: Vec<BasisSymbol>) -> Result<Self, BasisError> {
        match symbols.first() {
            Some(BasisSymbol::Unit) => {}
            _ => return Err(BasisError::MissingUnit),
        }
        let mut last = 0u64;
        for sym in &symbols[1..] {
            match *sym {
                BasisSymbol::Unit => return Err(BasisError::MisplacedUnit),
                BasisSymbol::Sqrt(p) => {
                    if p > MAX_PRIME {
                        return Err(BasisError::TooLarge(p));
                    }
                    if !is_prime(p) {
                        return Err(BasisError::NotPrime(p));
                    }
                    if p <= last {
                        return Err(BasisError::Unordered);
                    }
                    last = p;
                }
            }
        }
        Ok(Basis { symbols })
    }

    /// The rational unit alone.
    pub fn rational() -> Self {
        Basis {
            symbols: vec![BasisSymbol::Unit],
        }
    }

    /// `(1, sqrt(2), sqrt(3), sqrt(5), ...)` with `count` square roots.
    pub fn with_first_primes(count: usize) -> Self {
        let mut symbols = vec![BasisSymbol::Unit];
        symbols.extend(first_primes(count).into_iter().map(BasisSymbol::Sqrt));
        Basis { symbols }
    }

    pub fn symbols(&self) -> &[BasisSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn position(&self, symbol: BasisSymbol) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.symbols.iter().map(ToString::to_string).collect()
    }

    pub fn parse_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, BasisError> {
        let symbols = items
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<_>, _>>()?;
        Basis::new(symbols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes_are_primes() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn symbol_text_round_trip() {
        for s in ["1", "sqrt(2)", "sqrt(97)"] {
            assert_eq!(s.parse::<BasisSymbol>().unwrap().to_string(), s);
        }
        for bad in ["sqrt(02)", "sqrt()", "sqrt(-3)", "2", "sqrt(2", "SQRT(2)"] {
            assert!(bad.parse::<BasisSymbol>().is_err(), "{bad}");
        }
    }

    #[test]
    fn basis_validation() {
        assert!(Basis::parse_strings(&["1", "sqrt(2)", "sqrt(5)"]).is_ok());
        assert_eq!(
            Basis::parse_strings(&["sqrt(2)"]),
            Err(BasisError::MissingUnit)
        );
        assert_eq!(
            Basis::parse_strings(&["1", "sqrt(3)", "sqrt(2)"]),
            Err(BasisError::Unordered)
        );
        assert_eq!(
            Basis::parse_strings(&["1", "sqrt(4)"]),
            Err(BasisError::NotPrime(4))
        );
        assert_eq!(
            Basis::parse_strings(&["1", "1"]),
            Err(BasisError::MisplacedUnit)
        );
    }
}
