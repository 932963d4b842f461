use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::algebra::{bernoulli_number, Rational};

use super::LieError;

/// Power series in `ad(x)` applied by [`super::LieAlgebra::adjoint_series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    /// `exp(ad x)`, coefficients `1/k!`.
    Exp,
    /// `(exp(ad x) - 1)/ad x`, coefficients `1/(k+1)!`.
    Expm1OverId,
    /// `ad x/(exp(ad x) - 1)`, coefficients `B_k/k!`.
    IdOverExpm1,
    /// Same series as `Exp`; `Ad_{exp x}`.
    Ad,
}

impl Series {
    pub fn coefficient(self, k: usize) -> Rational {
        match self {
            Series::Exp | Series::Ad => Rational::one() / factorial(k),
            Series::Expm1OverId => Rational::one() / factorial(k + 1),
            Series::IdOverExpm1 => bernoulli_number(k) / factorial(k),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Series::Exp => "exp",
            Series::Expm1OverId => "expm1-over-id",
            Series::IdOverExpm1 => "id-over-expm1",
            Series::Ad => "Ad",
        }
    }
}

impl FromStr for Series {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, LieError> {
        match s {
            "exp" => Ok(Series::Exp),
            "expm1-over-id" => Ok(Series::Expm1OverId),
            "id-over-expm1" => Ok(Series::IdOverExpm1),
            "Ad" => Ok(Series::Ad),
            other => Err(LieError::UnknownSeries(other.to_string())),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn factorial(k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 2..=k {
        acc *= Rational::from_integer((i as i64).into());
    }
    acc
}

/// A word in the letters X (0) and Y (1): bit `i` of `mask` is letter `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Word {
    pub len: u32,
    pub mask: u32,
}

impl Word {
    pub fn letter(self, i: u32) -> u32 {
        (self.mask >> i) & 1
    }

    fn concat(self, other: Word) -> Word {
        Word {
            len: self.len + other.len,
            mask: self.mask | (other.mask << self.len),
        }
    }
}

type Assoc = HashMap<Word, Rational>;

fn assoc_mul(a: &Assoc, b: &Assoc, max_len: u32) -> Assoc {
    let mut out = Assoc::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len + wb.len > max_len {
                continue;
            }
            let e = out.entry(wa.concat(*wb)).or_insert_with(Rational::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

type WordSeries = std::sync::Arc<Vec<(Word, Rational)>>;

static BCH_WORDS: Lazy<Mutex<HashMap<u32, WordSeries>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients of `log(e^X e^Y)` in the free associative algebra, truncated
/// at word length `max_len`, already divided by the word length so that the
/// Lie element is `sum c_w [..[w_1, w_2], .., w_n]`.
pub(crate) fn bch_dynkin_words(max_len: u32) -> WordSeries {
    if let Some(w) = BCH_WORDS.lock().get(&max_len) {
        return w.clone();
    }
    let mut z = Assoc::new();
    for p in 0..=max_len {
        for q in 0..=(max_len - p) {
            if p + q == 0 {
                continue;
            }
            let mask = ((1u32 << q) - 1) << p;
            let c = Rational::one() / (factorial(p as usize) * factorial(q as usize));
            z.insert(Word { len: p + q, mask }, c);
        }
    }
    let mut log = Assoc::new();
    let mut power = z.clone();
    for n in 1..=max_len {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let coeff = Rational::new(sign.into(), (n as i64).into());
        for (w, c) in &power {
            *log.entry(*w).or_insert_with(Rational::zero) += c * &coeff;
        }
        power = assoc_mul(&power, &z, max_len);
    }
    let mut words: Vec<(Word, Rational)> = log
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| {
            let l = Rational::from_integer((w.len as i64).into());
            (w, c / l)
        })
        .collect();
    words.sort_by_key(|(w, _)| (w.len, w.mask));
    let words = std::sync::Arc::new(words);
    BCH_WORDS.lock().insert(max_len, words.clone());
    words
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn series_coefficients() {
        assert_eq!(Series::Exp.coefficient(3), rat(1, 6));
        assert_eq!(Series::Expm1OverId.coefficient(2), rat(1, 6));
        assert_eq!(Series::IdOverExpm1.coefficient(1), rat(-1, 2));
        assert_eq!(Series::IdOverExpm1.coefficient(2), rat(1, 12));
        assert!("bogus".parse::<Series>().is_err());
        assert_eq!("Ad".parse::<Series>().unwrap(), Series::Ad);
    }

    #[test]
    fn dynkin_words_degree_two() {
        let words = bch_dynkin_words(2);
        let get = |len, mask| {
            words
                .iter()
                .find(|(w, _)| w.len == len && w.mask == mask)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero)
        };
        assert_eq!(get(1, 0b0), rat(1, 1));
        assert_eq!(get(1, 0b1), rat(1, 1));
        // XY - YX over 2 each: coefficient of XY is 1/4, of YX is -1/4
        assert_eq!(get(2, 0b10), rat(1, 4));
        assert_eq!(get(2, 0b01), rat(-1, 4));
    }
}
