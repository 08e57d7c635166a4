//! Rotating-wheel combinatorics: the sequence i_t, strings, minimal elements,
//! the functions A, B, C_t, D_t, J_t, and the sets S̄_{m,n}(j', l').

use std::collections::BTreeSet;

use crate::bd::{cg_triple, check_coprime, OrderTable, PosRoot};
use crate::error::{Error, Result};
use crate::scalar::modp;

/// i_0 = n, i_1 = m, i_t = (−i_{t−2}) mod i_{t−1}, stopping at the first 1.
pub fn euclid_sequence(m: i64, n: i64) -> Result<Vec<i64>> {
    check_coprime(m, n)?;
    let mut seq = vec![n, m];
    while *seq.last().unwrap() != 1 {
        let k = seq.len();
        let next = modp(-seq[k - 2], seq[k - 1]);
        assert!(next > 0, "sequence stalled at zero for ({m}, {n})");
        seq.push(next);
    }
    Ok(seq)
}

/// The chains 1, 1+m, 1+2m, ... (mod n), cut wherever adding m wraps around.
pub fn strings(m: i64, n: i64) -> Result<Vec<Vec<i64>>> {
    check_coprime(m, n)?;
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![1];
    for k in 1..n {
        let v = modp(k * m, n) + 1;
        if v < *cur.last().unwrap() {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(v);
    }
    out.push(cur);
    Ok(out)
}

/// Wheel data for a coprime pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelData {
    pub m: i64,
    pub n: i64,
    pub seq: Vec<i64>,
    pub strings: Vec<Vec<i64>>,
    pub minimal_elements: Vec<i64>,
}

impl WheelData {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        let seq = euclid_sequence(m, n)?;
        let strings = strings(m, n)?;
        let minimal_elements = strings.iter().map(|s| s[0]).collect();
        Ok(WheelData {
            m,
            n,
            seq,
            strings,
            minimal_elements,
        })
    }

    /// L, the index with i_L = 1.
    pub fn len(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// x mod i_0 mod i_1 ... mod i_t.
    pub fn nested_mod(&self, x: i64, t: usize) -> i64 {
        self.seq[..=t].iter().fold(x, |acc, &i| modp(acc, i))
    }

    fn check_t(&self, t: usize) -> Result<()> {
        if t >= self.len() {
            return Err(Error::IndexOutOfRange(format!(
                "t = {t} not below L = {}",
                self.len()
            )));
        }
        Ok(())
    }

    fn check_pos(&self, l: i64) -> Result<()> {
        if !(1..=self.n).contains(&l) {
            return Err(Error::IndexOutOfRange(format!(
                "{l} not in [1, {}]",
                self.n
            )));
        }
        Ok(())
    }

    pub fn func_c(&self, t: usize, l: i64) -> Result<i64> {
        self.check_t(t)?;
        self.check_pos(l)?;
        let i0 = self.seq[0];
        let inner = if t.is_multiple_of(2) { i0 - l } else { l - 1 };
        Ok(self.seq[t] - self.nested_mod(inner, t))
    }

    pub fn func_d(&self, t: usize, l: i64) -> Result<i64> {
        self.check_t(t)?;
        self.check_pos(l)?;
        let i0 = self.seq[0];
        let inner = if t.is_multiple_of(2) { l - 1 } else { i0 - l };
        Ok(1 + self.nested_mod(inner, t))
    }

    /// J_t(j, l) = 1 − i_t + [(n−l) mod i_0 ... mod i_t] + [(j−1) mod i_0 ... mod i_t].
    pub fn func_j(&self, t: usize, j: i64, l: i64) -> i64 {
        1 - self.seq[t] + self.nested_mod(self.n - l, t) + self.nested_mod(j - 1, t)
    }

    /// J_t through C_t and D_t, with j' = n+1−j.
    pub fn func_j_via_cd(&self, t: usize, j: i64, l: i64) -> Result<i64> {
        let (jp, lp) = (self.n + 1 - j, self.n + 1 - l);
        if t.is_multiple_of(2) {
            Ok(self.func_d(t, lp)? - self.func_c(t, jp)?)
        } else {
            Ok(self.func_d(t, jp)? - self.func_c(t, lp)?)
        }
    }

    /// S̄_{m,n}(j', l') from the closed double sum.
    pub fn sbar_closed(&self, jp: i64, lp: i64) -> BTreeSet<i64> {
        let (j, l) = (self.n + 1 - jp, self.n + 1 - lp);
        let mut out = BTreeSet::new();
        for t in 0..self.len() {
            let jt = self.func_j(t, j, l);
            if jt <= 0 {
                continue;
            }
            let step = self.seq[t + 1];
            for k in 0..=(jt - 1) / step {
                let fresh = out.insert(jp + jt - k * step);
                assert!(fresh, "repeated element in S-bar({jp}, {lp})");
            }
        }
        out
    }
}

pub fn func_a(jp: i64, m: i64, n: i64) -> i64 {
    m - modp(n - jp, m)
}

pub fn func_b(lp: i64, m: i64) -> i64 {
    1 + modp(lp - 1, m)
}

/// `{s : e_{j1,s} ⪯ e_{j1+j2−s, j2}}`, with both sides required to be positive roots.
pub fn sbar_bruteforce_with(table: &OrderTable, n: i64, j1: i64, j2: i64) -> BTreeSet<i64> {
    (1..=n)
        .filter(|&s| {
            let a = j1 + j2 - s;
            j1 < s && a >= 1 && a < j2 && j2 <= n && {
                let rho = PosRoot::new(j1 as usize, s as usize);
                let mu = PosRoot::new(a as usize, j2 as usize);
                table.precedes(&rho, &mu, true)
            }
        })
        .collect()
}

pub fn sbar_bruteforce(m: i64, n: i64, j1: i64, j2: i64) -> Result<BTreeSet<i64>> {
    let t = cg_triple(m as usize, n as usize)?;
    Ok(sbar_bruteforce_with(&t.order_table(), n, j1, j2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        assert_eq!(euclid_sequence(12, 31).unwrap(), vec![31, 12, 5, 3, 1]);
        assert_eq!(euclid_sequence(1, 7).unwrap(), vec![7, 1]);
        assert_eq!(euclid_sequence(2, 5).unwrap(), vec![5, 2, 1]);
        assert!(euclid_sequence(2, 4).is_err());
    }

    #[test]
    fn worked_example_strings() {
        let w = WheelData::new(12, 31).unwrap();
        let want: Vec<Vec<i64>> = vec![
            vec![1, 13, 25],
            vec![6, 18, 30],
            vec![11, 23],
            vec![4, 16, 28],
            vec![9, 21],
            vec![2, 14, 26],
            vec![7, 19, 31],
            vec![12, 24],
            vec![5, 17, 29],
            vec![10, 22],
            vec![3, 15, 27],
            vec![8, 20],
        ];
        assert_eq!(w.strings, want);
        assert_eq!(
            w.minimal_elements,
            vec![1, 6, 11, 4, 9, 2, 7, 12, 5, 10, 3, 8]
        );
        assert_eq!(strings(1, 5).unwrap(), vec![vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn a_b_c_d_values() {
        assert_eq!(func_a(15, 12, 31), 8);
        assert_eq!(func_b(22, 12), 10);
        assert_eq!(func_b(1, 7), 1);
        let w = WheelData::new(12, 31).unwrap();
        assert_eq!(w.func_c(1, 22).unwrap(), 3);
        assert_eq!(w.func_d(1, 15).unwrap(), 5);
        assert_eq!(w.func_c(0, 10).unwrap(), 10);
        assert_eq!(w.func_j(1, 17, 10), 2);
        assert_eq!(w.func_j_via_cd(1, 17, 10).unwrap(), 2);
        assert!(w.func_c(4, 1).is_err());
        assert!(w.func_d(0, 32).is_err());
    }

    #[test]
    fn j0_is_difference() {
        let w = WheelData::new(5, 12).unwrap();
        for j in 1..=12 {
            for l in 1..=12 {
                assert_eq!(w.func_j(0, j, l), j - l);
            }
        }
    }

    #[test]
    fn sbar_examples() {
        let w = WheelData::new(12, 31).unwrap();
        assert_eq!(w.sbar_closed(15, 22), BTreeSet::from([16, 17, 19, 22]));
        assert_eq!(
            sbar_bruteforce(12, 31, 15, 22).unwrap(),
            BTreeSet::from([16, 17, 19, 22])
        );
        let w = WheelData::new(5, 12).unwrap();
        assert_eq!(w.sbar_closed(3, 5), BTreeSet::from([4, 5, 7]));
        assert!(sbar_bruteforce(5, 12, 1, 1).unwrap().is_empty());
        assert!(w.sbar_closed(1, 1).is_empty());
    }

    #[test]
    fn minimal_elements_step() {
        for (m, n) in [(12, 31), (5, 12), (3, 8), (2, 7)] {
            let w = WheelData::new(m, n).unwrap();
            for pair in w.minimal_elements.windows(2) {
                assert_eq!(modp(pair[1] - pair[0], m), modp(-n, m));
            }
        }
    }
}
