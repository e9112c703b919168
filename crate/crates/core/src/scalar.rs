//! Exact rational scalars and their canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text: `p/q` in lowest terms with `q > 0`, or just `p` when `q == 1`.
pub fn format(x: &Scalar) -> String {
    x.to_string()
}

/// Parses a rational in canonical form only; `"2/4"`, `"3/1"` and `"1/-2"`
/// are rejected.
pub fn parse_canonical(s: &str) -> Option<Scalar> {
    let value = parse_lenient(s)?;
    (format(&value) == s).then_some(value)
}

/// Parses `p` or `p/q` with any nonzero `q`.
pub fn parse_lenient(s: &str) -> Option<Scalar> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if q.is_zero() {
        return None;
    }
    Some(Scalar::new(p, q))
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root of a nonnegative rational if it is a perfect square.
pub fn exact_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Scalar::new(n, d))
}

pub fn max<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn min<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if a <= b {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(parse_canonical("3"), Some(int(3)));
        assert_eq!(parse_canonical("-5/2"), Some(ratio(-5, 2)));
        assert_eq!(parse_canonical("2/4"), None);
        assert_eq!(parse_canonical("3/1"), None);
        assert_eq!(parse_canonical("1/-2"), None);
        assert_eq!(parse_canonical("1/0"), None);
        assert_eq!(parse_canonical("x"), None);
        assert_eq!(format(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        assert_eq!(exact_sqrt(&int(-4)), None);
        assert_eq!(exact_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn huge_values_convert() {
        let big = Scalar::new(BigInt::from(3).pow(2000), BigInt::from(2).pow(3000));
        let expected = 2000.0 * 3f64.ln() - 3000.0 * 2f64.ln();
        assert!((to_f64(&big).ln() - expected).abs() < 1e-9);
    }
}
