//! Weighted counts of multiply covered tori.
//!
//! Every embedded regular torus carries one of eight labels `(±, i)`. A label
//! selects a generating function `f_(±,i)(t)`; the coefficient of `tᵏ` is the
//! contribution of the torus to the count in `k` times its class:
//!
//! ```text
//! f_(+,0) = 1/(1−t)        f_(+,1) = 1+t
//! f_(+,2) = (1+t)/(1+t²)   f_(+,3) = (1+t)(1−t²)/(1+t²)
//! f_(−,i) = 1/f_(+,i)
//! ```
//!
//! The count for `kA` (A primitive, A² = 0) is the coefficient of `tᵏ` in the
//! product over all tori `C` in classes `mA` of `f_ℓ(C)(tᵐ)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit; series is not invertible over ℤ")]
    NotInvertible(i64),
    #[error("substitution power must be at least 1, got {0}")]
    BadPower(u32),
    #[error("integer overflow in series arithmetic")]
    Overflow,
    #[error("invalid torus label `{0}` (expected one of +0..+3, -0..-3)")]
    BadLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// `(sign of the untwisted determinant, number of negative twisted ones)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusLabel {
    sign: Sign,
    twisted: u8,
}

impl TorusLabel {
    pub fn new(sign: Sign, twisted: u8) -> Option<Self> {
        (twisted <= 3).then_some(TorusLabel { sign, twisted })
    }

    pub fn plus(twisted: u8) -> Self {
        Self::new(Sign::Plus, twisted).expect("twisted count in 0..=3")
    }

    pub fn minus(twisted: u8) -> Self {
        Self::new(Sign::Minus, twisted).expect("twisted count in 0..=3")
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn twisted(&self) -> u8 {
        self.twisted
    }

    /// The label with the opposite sign and the same twisted count; a birth
    /// creates a pair `{ℓ, ℓ.opposite()}`.
    pub fn opposite(&self) -> Self {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        TorusLabel { sign, twisted: self.twisted }
    }

    pub fn all() -> [TorusLabel; 8] {
        [
            Self::plus(0),
            Self::plus(1),
            Self::plus(2),
            Self::plus(3),
            Self::minus(0),
            Self::minus(1),
            Self::minus(2),
            Self::minus(3),
        ]
    }
}

impl fmt::Display for TorusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{}{}", s, self.twisted)
    }
}

impl FromStr for TorusLabel {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let mut chars = t.chars();
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') | Some('−') => Sign::Minus,
            _ => return Err(SeriesError::BadLabel(s.to_string())),
        };
        let rest = chars.as_str();
        let twisted = match rest {
            "0" => 0,
            "1" => 1,
            "2" => 2,
            "3" => 3,
            _ => return Err(SeriesError::BadLabel(s.to_string())),
        };
        Ok(TorusLabel { sign, twisted })
    }
}

/// Truncated power series `c₀ + c₁t + … + c_N t^N` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<i64>,
}

impl TruncSeries {
    /// Series from the given coefficients, padded with zeros or cut to `order`.
    pub fn new(mut coeffs: Vec<i64>, order: usize) -> Self {
        coeffs.resize(order + 1, 0);
        TruncSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `tᵏ`; `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<i64> {
        self.coeffs.get(k).copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        let order = self.order().min(other.order());
        let mut out = vec![0i64; order + 1];
        for (i, &a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                let term = a.checked_mul(b).ok_or(SeriesError::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(SeriesError::Overflow)?;
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Multiplicative inverse; needs `c₀ = ±1` so the result stays integral.
    pub fn inverse(&self) -> Result<TruncSeries, SeriesError> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(SeriesError::NotInvertible(c0));
        }
        let n = self.order();
        let mut inv = vec![0i64; n + 1];
        inv[0] = c0;
        for k in 1..=n {
            let mut acc = 0i64;
            for j in 1..=k {
                let term = self.coeffs[j].checked_mul(inv[k - j]).ok_or(SeriesError::Overflow)?;
                acc = acc.checked_add(term).ok_or(SeriesError::Overflow)?;
            }
            // c0·inv_k = −Σ c_j inv_{k−j}, and c0 = 1/c0.
            inv[k] = acc.checked_neg().and_then(|v| v.checked_mul(c0)).ok_or(SeriesError::Overflow)?;
        }
        Ok(TruncSeries { coeffs: inv })
    }

    /// `Σ cₖ tᵏ ↦ Σ cₖ t^{km}`, keeping the same truncation order.
    pub fn substitute_power(&self, m: u32) -> Result<TruncSeries, SeriesError> {
        if m < 1 {
            return Err(SeriesError::BadPower(m));
        }
        let n = self.order();
        let mut out = vec![0i64; n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let e = k * m as usize;
            if e > n {
                break;
            }
            out[e] = c;
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// Numerator and denominator polynomials of `f_(+,i)`.
fn plus_rational_form(twisted: u8) -> (Vec<i64>, Vec<i64>) {
    match twisted {
        0 => (vec![1], vec![1, -1]),
        1 => (vec![1, 1], vec![1]),
        2 => (vec![1, 1], vec![1, 0, 1]),
        3 => (vec![1, 1, -1, -1], vec![1, 0, 1]),
        _ => unreachable!("label invariant"),
    }
}

/// Expansion of `f_label` up to `t^order`.
pub fn f_series(label: TorusLabel, order: usize) -> TruncSeries {
    let (num, den) = plus_rational_form(label.twisted);
    let (num, den) = match label.sign {
        Sign::Plus => (num, den),
        Sign::Minus => (den, num),
    };
    let num = TruncSeries::new(num, order);
    let den = TruncSeries::new(den, order);
    let inv = den.inverse().expect("denominators have constant term 1");
    num.mul(&inv).expect("f-series coefficients are bounded by 2")
}

/// A torus in class `cover·A` carrying `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusEntry {
    pub label: TorusLabel,
    pub cover: u32,
}

impl TorusEntry {
    pub fn new(label: TorusLabel, cover: u32) -> Self {
        TorusEntry { label, cover }
    }
}

impl fmt::Display for TorusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.label, self.cover)
    }
}

/// Parses `label[:cover]`, cover defaulting to 1.
impl FromStr for TorusEntry {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (label, cover) = match s.split_once(':') {
            Some((l, c)) => {
                let cover: u32 = c.trim().parse().map_err(|_| SeriesError::BadLabel(s.to_string()))?;
                if cover == 0 {
                    return Err(SeriesError::BadPower(0));
                }
                (l, cover)
            }
            None => (s, 1),
        };
        Ok(TorusEntry { label: label.parse()?, cover })
    }
}

/// The product `∏_C f_ℓ(C)(t^{m_C})` truncated at `t^order`.
pub fn torus_product(tori: &[TorusEntry], order: usize) -> Result<TruncSeries, SeriesError> {
    let mut acc = TruncSeries::one(order);
    for torus in tori {
        let f = f_series(torus.label, order).substitute_power(torus.cover)?;
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

/// Weighted count of tori in class `kA`: the coefficient of `tᵏ` in
/// [`torus_product`]. An empty list counts 1 for `k = 0` and 0 otherwise.
pub fn gr_torus_class(tori: &[TorusEntry], k: usize) -> Result<i64, SeriesError> {
    Ok(torus_product(tori, k)?.coeff(k).expect("order is k"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u8) -> TorusLabel {
        TorusLabel::plus(i)
    }

    fn m(i: u8) -> TorusLabel {
        TorusLabel::minus(i)
    }

    /// Long division of polynomials with unit leading constant, written
    /// independently of `TruncSeries::inverse`.
    fn divide(num: &[i64], den: &[i64], order: usize) -> Vec<i64> {
        assert_eq!(den[0].abs(), 1);
        let mut rem: Vec<i64> = (0..=order).map(|i| num.get(i).copied().unwrap_or(0)).collect();
        let mut q = vec![0; order + 1];
        for k in 0..=order {
            q[k] = rem[k] / den[0];
            for (j, d) in den.iter().enumerate() {
                if k + j <= order {
                    rem[k + j] -= q[k] * d;
                }
            }
        }
        q
    }

    #[test]
    fn f_series_examples() {
        assert_eq!(f_series(p(0), 4).coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(f_series(m(0), 4).coeffs(), &[1, -1, 0, 0, 0]);
        assert_eq!(f_series(p(1), 3).coeffs(), &[1, 1, 0, 0]);
        assert_eq!(f_series(p(2), 5).coeffs(), divide(&[1, 1], &[1, 0, 1], 5).as_slice());
        assert_eq!(f_series(p(2), 5).coeffs(), &[1, 1, -1, -1, 1, 1]);
        assert_eq!(f_series(p(3), 6).coeffs(), divide(&[1, 1, -1, -1], &[1, 0, 1], 6).as_slice());
        assert_eq!(f_series(m(3), 6).coeffs(), divide(&[1, 0, 1], &[1, 1, -1, -1], 6).as_slice());
    }

    #[test]
    fn series_ops() {
        let one = f_series(p(1), 6).mul(&f_series(m(1), 6)).unwrap();
        assert_eq!(one, TruncSeries::one(6));
        let s = TruncSeries::new(vec![1, 1], 4).substitute_power(2).unwrap();
        assert_eq!(s.coeffs(), &[1, 0, 1, 0, 0]);
        let sq = f_series(p(0), 8).mul(&f_series(p(0), 8)).unwrap();
        for k in 0..=8 {
            assert_eq!(sq.coeff(k), Some(k as i64 + 1));
        }
        assert_eq!(sq.coeff(9), None);
        assert_eq!(TruncSeries::new(vec![2, 1], 3).inverse(), Err(SeriesError::NotInvertible(2)));
        assert_eq!(TruncSeries::one(3).substitute_power(0), Err(SeriesError::BadPower(0)));
        // Mismatched orders truncate to the smaller one.
        let a = TruncSeries::new(vec![1, 1, 1], 2);
        let b = TruncSeries::new(vec![1, 1, 1, 1, 1], 4);
        assert_eq!(a.mul(&b).unwrap().order(), 2);
    }

    #[test]
    fn torus_counts() {
        let two_plus = [TorusEntry::new(p(0), 1), TorusEntry::new(p(0), 1)];
        assert_eq!(gr_torus_class(&two_plus, 3).unwrap(), 4);
        let j1 = [
            TorusEntry::new(p(0), 1),
            TorusEntry::new(p(0), 1),
            TorusEntry::new(p(0), 1),
            TorusEntry::new(m(0), 1),
        ];
        assert_eq!(gr_torus_class(&j1, 2).unwrap(), 3);
        assert_eq!(gr_torus_class(&[TorusEntry::new(m(0), 1)], 2).unwrap(), 0);
        assert_eq!(gr_torus_class(&[], 0).unwrap(), 1);
        assert_eq!(gr_torus_class(&[], 3).unwrap(), 0);
        // A (+,0) torus in class 2A contributes only to even multiples.
        let doubled = [TorusEntry::new(p(0), 2)];
        assert_eq!(gr_torus_class(&doubled, 3).unwrap(), 0);
        assert_eq!(gr_torus_class(&doubled, 4).unwrap(), 1);
    }

    #[test]
    fn label_text() {
        for label in TorusLabel::all() {
            assert_eq!(label.to_string().parse::<TorusLabel>().unwrap(), label);
        }
        assert_eq!("−3".parse::<TorusLabel>().unwrap(), m(3));
        assert!("+4".parse::<TorusLabel>().is_err());
        assert!("0".parse::<TorusLabel>().is_err());
        assert_eq!("+2:3".parse::<TorusEntry>().unwrap(), TorusEntry::new(p(2), 3));
        assert_eq!("-1".parse::<TorusEntry>().unwrap(), TorusEntry::new(m(1), 1));
        assert!("+1:0".parse::<TorusEntry>().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(f_series(m(0), 3).to_string(), "1 - t + O(t^4)");
        assert_eq!(f_series(p(2), 3).to_string(), "1 + t - t^2 - t^3 + O(t^4)");
    }
}
