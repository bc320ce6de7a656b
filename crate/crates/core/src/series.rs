//! Hilbert series arithmetic: cyclic-polynomial division, balance sets,
//! and factorization into products of `(a)_t` and `(b)_{t^2}`.

use std::fmt;
use std::str::FromStr;

use crate::error::CoreError;

/// The Hilbert series of a graded space: `coeffs[j] = dim U(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    coeffs: Vec<u64>,
}

impl HilbertSeries {
    pub fn new(coeffs: Vec<u64>) -> HilbertSeries {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        HilbertSeries { coeffs }
    }

    pub fn one() -> HilbertSeries {
        HilbertSeries { coeffs: vec![1] }
    }

    /// `(k)_t = 1 + t + ... + t^(k-1)`.
    pub fn cyclic(k: u32) -> HilbertSeries {
        assert!(k >= 1);
        HilbertSeries {
            coeffs: vec![1; k as usize],
        }
    }

    /// `(k)_{t^2} = 1 + t^2 + ... + t^(2(k-1))`.
    pub fn cyclic_t2(k: u32) -> HilbertSeries {
        assert!(k >= 1);
        let mut coeffs = vec![0; 2 * (k as usize - 1) + 1];
        for j in 0..k as usize {
            coeffs[2 * j] = 1;
        }
        HilbertSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn mul(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HilbertSeries::new(out)
    }

    /// Exact division. `None` unless the quotient exists with nonnegative
    /// integer coefficients.
    pub fn divide(&self, divisor: &HilbertSeries) -> Option<HilbertSeries> {
        let d = divisor.coeffs.len() - 1;
        if *divisor.coeffs.last().unwrap() == 0 {
            return None;
        }
        if self.coeffs == [0] {
            return Some(HilbertSeries::new(vec![0]));
        }
        if self.coeffs.len() <= d {
            return None;
        }
        let lead = *divisor.coeffs.last().unwrap() as i128;
        let mut rem: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
        let qlen = self.coeffs.len() - d;
        let mut quot = vec![0i128; qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + d];
            if c % lead != 0 {
                return None;
            }
            let q = c / lead;
            quot[i] = q;
            if q != 0 {
                for (j, &dv) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= q * dv as i128;
                }
            }
        }
        if rem.iter().any(|&c| c != 0) || quot.iter().any(|&c| c < 0) {
            return None;
        }
        Some(HilbertSeries::new(
            quot.into_iter().map(|c| c as u64).collect(),
        ))
    }

    /// Division by `(k)_t`.
    pub fn divide_cyclic(&self, k: u32) -> Option<HilbertSeries> {
        self.divide(&HilbertSeries::cyclic(k))
    }

    /// All `k >= 2` up to `degree + 1` with `(k)_t | self`.
    pub fn balanced_set(&self) -> Vec<u32> {
        (2..=(self.degree() as u32 + 1))
            .filter(|&k| self.divide_cyclic(k).is_some())
            .collect()
    }

    /// Expand a factorization `prod (a_j)_t * prod (b_j)_{t^2}`.
    pub fn expand(alphas: &[u32], betas: &[u32]) -> HilbertSeries {
        let mut h = HilbertSeries::one();
        for &a in alphas {
            h = h.mul(&HilbertSeries::cyclic(a));
        }
        for &b in betas {
            h = h.mul(&HilbertSeries::cyclic_t2(b));
        }
        h
    }

    /// Search for a factorization `self = prod (a_j)_t * prod (b_j)_{t^2}`.
    ///
    /// Such factorizations are not unique; one witness is returned,
    /// preferring factorizations without `(b)_{t^2}` factors, then with a
    /// minimal number of them. Factors come out in descending order.
    pub fn factorize(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        if self.coeffs[0] != 1 {
            return None;
        }
        for beta_budget in 0..=(self.degree() / 2) {
            let mut alphas = Vec::new();
            let mut betas = Vec::new();
            if factorize_rec(
                self,
                self.degree() as u32 + 1,
                self.degree() as u32 / 2 + 1,
                beta_budget,
                &mut alphas,
                &mut betas,
            ) {
                return Some((alphas, betas));
            }
            if self.degree() == 0 {
                break;
            }
        }
        None
    }

    /// All factorizations, capped in count.
    pub fn factorize_all(&self, cap: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut out = Vec::new();
        if self.coeffs[0] != 1 {
            return out;
        }
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        factorize_collect(
            self,
            self.degree() as u32 + 1,
            self.degree() as u32 / 2 + 1,
            &mut alphas,
            &mut betas,
            &mut out,
            cap,
        );
        out
    }
}

// Alphas are peeled in non-increasing order, then betas in non-increasing
// order; every factor multiset has exactly one such ordering.
fn factorize_rec(
    h: &HilbertSeries,
    max_alpha: u32,
    max_beta: u32,
    beta_budget: usize,
    alphas: &mut Vec<u32>,
    betas: &mut Vec<u32>,
) -> bool {
    if h.is_one() {
        return betas.len() == beta_budget;
    }
    if betas.is_empty() {
        for a in (2..=max_alpha.min(h.degree() as u32 + 1)).rev() {
            if let Some(q) = h.divide_cyclic(a) {
                alphas.push(a);
                if factorize_rec(&q, a, max_beta, beta_budget, alphas, betas) {
                    return true;
                }
                alphas.pop();
            }
        }
    }
    if betas.len() < beta_budget && h.degree() >= 2 {
        for b in (2..=max_beta.min(h.degree() as u32 / 2 + 1)).rev() {
            if let Some(q) = h.divide(&HilbertSeries::cyclic_t2(b)) {
                betas.push(b);
                if factorize_rec(&q, 1, b, beta_budget, alphas, betas) {
                    return true;
                }
                betas.pop();
            }
        }
    }
    false
}

fn factorize_collect(
    h: &HilbertSeries,
    max_alpha: u32,
    max_beta: u32,
    alphas: &mut Vec<u32>,
    betas: &mut Vec<u32>,
    out: &mut Vec<(Vec<u32>, Vec<u32>)>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if h.is_one() {
        out.push((alphas.clone(), betas.clone()));
        return;
    }
    if betas.is_empty() {
        for a in (2..=max_alpha.min(h.degree() as u32 + 1)).rev() {
            if let Some(q) = h.divide_cyclic(a) {
                alphas.push(a);
                factorize_collect(&q, a, max_beta, alphas, betas, out, cap);
                alphas.pop();
            }
        }
    }
    if h.degree() >= 2 {
        for b in (2..=max_beta.min(h.degree() as u32 / 2 + 1)).rev() {
            if let Some(q) = h.divide(&HilbertSeries::cyclic_t2(b)) {
                betas.push(b);
                factorize_collect(&q, 1, b, alphas, betas, out, cap);
                betas.pop();
            }
        }
    }
}

impl fmt::Display for HilbertSeries {
    /// Text form `1+3t+4t^2+3t^3+t^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            match (j, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (j, 1) => write!(f, "t^{j}")?,
                (j, c) => write!(f, "{c}t^{j}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for HilbertSeries {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, CoreError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut coeffs: Vec<u64> = Vec::new();
        for term in s.split('+') {
            let (coeff, power) = match term.split_once('t') {
                None => (
                    term.parse::<u64>()
                        .map_err(|_| CoreError::Parse(format!("bad term {term:?}")))?,
                    0usize,
                ),
                Some((c, p)) => {
                    let coeff = if c.is_empty() {
                        1
                    } else {
                        c.parse::<u64>()
                            .map_err(|_| CoreError::Parse(format!("bad term {term:?}")))?
                    };
                    let power = if p.is_empty() {
                        1
                    } else {
                        p.strip_prefix('^')
                            .ok_or_else(|| CoreError::Parse(format!("bad term {term:?}")))?
                            .parse::<usize>()
                            .map_err(|_| CoreError::Parse(format!("bad term {term:?}")))?
                    };
                    (coeff, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] += coeff;
        }
        Ok(HilbertSeries::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_matches_convolution_oracle() {
        fn convolve(fs: &[Vec<u64>]) -> Vec<u64> {
            let mut acc = vec![1u64];
            for f in fs {
                let mut next = vec![0u64; acc.len() + f.len() - 1];
                for (i, &a) in acc.iter().enumerate() {
                    for (j, &b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
            acc
        }
        let h = HilbertSeries::expand(&[2, 2, 3], &[]);
        assert_eq!(
            h.coeffs(),
            convolve(&[vec![1, 1], vec![1, 1], vec![1, 1, 1]]).as_slice()
        );
        assert_eq!(h.coeffs(), &[1, 3, 4, 3, 1]);
        assert_eq!(h.total(), 12);

        let h4c = HilbertSeries::expand(&[6, 6, 6, 6], &[2, 2]);
        assert_eq!(h4c.total(), 5184);
        assert_eq!(h4c.degree(), 24);
        let oracle = convolve(&[
            vec![1, 1, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 1, 1],
            vec![1, 0, 1],
            vec![1, 0, 1],
        ]);
        assert_eq!(h4c.coeffs(), oracle.as_slice());
    }

    #[test]
    fn division() {
        let h3a = HilbertSeries::expand(&[2, 2, 3], &[]);
        let q = h3a.divide_cyclic(2).unwrap();
        assert_eq!(q, HilbertSeries::expand(&[2, 3], &[]));
        assert!(h3a.divide_cyclic(4).is_none());
        let h4b = HilbertSeries::expand(&[2, 2, 3, 6], &[]);
        assert!(h4b
            .divide(&HilbertSeries::cyclic(2).mul(&HilbertSeries::cyclic(2)))
            .is_some());
    }

    #[test]
    fn balanced_sets_match_reference() {
        let cases: &[(&[u32], &[u32], &[u32])] = &[
            (&[2, 2, 3], &[], &[2, 3]),                   // 3A
            (&[3, 4, 6], &[6], &[2, 3, 4, 6]),            // 3B
            (&[2, 2, 3, 3], &[], &[2, 3]),                // 4A
            (&[2, 2, 3, 6], &[], &[2, 3, 6]),             // 4B
            (&[6, 6, 6, 6], &[2, 2], &[2, 3, 4, 6]),      // 4C
            (&[4, 4, 4, 4, 5], &[], &[2, 4, 5]),          // 5A/5B
            (&[2, 2, 3, 3, 4, 4], &[], &[2, 3, 4]),       // 6A/6B/6C
            (&[6, 6, 6, 6, 6, 6, 7], &[], &[2, 3, 6, 7]), // 7A/7B
            (&[4, 4, 4, 4, 5, 5, 6, 6, 6, 6], &[], &[2, 3, 4, 5, 6]), // 10A/10B
        ];
        for (alphas, betas, expected) in cases {
            let h = HilbertSeries::expand(alphas, betas);
            assert_eq!(h.balanced_set(), *expected, "{alphas:?} {betas:?}");
        }
        // K[t]/t^m: all divisors k >= 2 of m.
        for m in 2..=12u32 {
            let h = HilbertSeries::cyclic(m);
            let expected: Vec<u32> = (2..=m).filter(|k| m % k == 0).collect();
            assert_eq!(h.balanced_set(), expected);
        }
    }

    #[test]
    fn factorize_round_trips() {
        for (alphas, betas) in [
            (vec![2u32, 2, 3], vec![]),
            (vec![3, 4, 6], vec![6u32]),
            (vec![6, 6, 6, 6], vec![2, 2]),
            (vec![2], vec![]),
        ] {
            let h = HilbertSeries::expand(&alphas, &betas);
            let (fa, fb) = h.factorize().expect("factorizable");
            assert_eq!(HilbertSeries::expand(&fa, &fb), h);
        }
        // 1 + t = (2)_t.
        let h = HilbertSeries::new(vec![1, 1]);
        assert_eq!(h.factorize(), Some((vec![2], vec![])));
    }

    #[test]
    fn factorize_prefers_pure_alpha() {
        // (2)_{t^2} = 1 + t^2 has no alpha-only factorization.
        let h = HilbertSeries::new(vec![1, 0, 1]);
        assert_eq!(h.factorize(), Some((vec![], vec![2])));
        // (2)_t^2 = 1 + 2t + t^2 has a pure-alpha one and must use it.
        let h = HilbertSeries::expand(&[2, 2], &[]);
        assert_eq!(h.factorize(), Some((vec![2, 2], vec![])));
    }

    #[test]
    fn beta_factorizations_found_for_3b_and_4c() {
        let h3b = HilbertSeries::expand(&[3, 4, 6], &[6]);
        let (fa, fb) = h3b.factorize().unwrap();
        assert!(!fb.is_empty(), "3B requires a (b)_{{t^2}} factor");
        assert_eq!(HilbertSeries::expand(&fa, &fb), h3b);
        let h4c = HilbertSeries::expand(&[6, 6, 6, 6], &[2, 2]);
        let (fa, fb) = h4c.factorize().unwrap();
        assert!(!fb.is_empty(), "4C requires a (b)_{{t^2}} factor");
        assert_eq!(HilbertSeries::expand(&fa, &fb), h4c);
    }

    #[test]
    fn display_and_parse() {
        let h = HilbertSeries::expand(&[2, 2, 3], &[]);
        assert_eq!(h.to_string(), "1+3t+4t^2+3t^3+t^4");
        let parsed: HilbertSeries = "1+3t+4t^2+3t^3+t^4".parse().unwrap();
        assert_eq!(parsed, h);
        let parsed: HilbertSeries = "1+t".parse().unwrap();
        assert_eq!(parsed, HilbertSeries::cyclic(2));
    }
}
