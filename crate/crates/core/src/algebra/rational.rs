use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::AlgebraError;

/// Exact rational number; the ground field of every computation.
pub type Rational = BigRational;

/// Shorthand constructor `rat(p, q) = p/q`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Canonical serialization: always `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_is_always_a_fraction() {
        assert_eq!(format_rational(&rat(3, 1)), "3/1");
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
    }

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational(" 5 ").unwrap(), rat(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
