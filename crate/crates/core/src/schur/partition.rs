use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// The one-row partition `(d)`.
    pub fn row(d: usize) -> Self {
        Partition(if d == 0 { vec![] } else { vec![d] })
    }

    /// The one-column partition `(1^d)`.
    pub fn column(d: usize) -> Self {
        Partition(vec![1; d])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (zero beyond the last row).
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Young diagram containment `mu ⊆ self`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().enumerate().all(|(i, &m)| m <= self.0[i])
    }

    /// Cells `(row, col)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// All partitions obtained by removing one corner box, top corner first.
    pub fn remove_one_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i) > self.part(i + 1) {
                let mut parts = self.0.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push(Partition(parts));
            }
        }
        out
    }

    /// All partitions of `d`, in reverse lexicographic order (`(d)` first).
    pub fn all(d: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }

    fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.0[r] - c - 1;
        let leg = self.conjugate().part(c) - r - 1;
        arm + leg + 1
    }

    /// Number of standard Young tableaux (hook length formula).
    pub fn standard_tableaux(&self) -> u128 {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.size() as u128).product();
        let mut den: u128 = 1;
        for (r, c) in self.cells() {
            den *= (self.0[r] - c - 1 + conj.part(c) - r) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }

    /// Number of semistandard tableaux with entries in `[n]`, i.e. `dim S_λ(K^n)`
    /// (hook content formula).
    pub fn semistandard_count(&self, n: usize) -> u128 {
        if self.len() > n {
            return 0;
        }
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for (r, c) in self.cells() {
            num *= (n + c - r) as u128;
            den *= self.hook(r, c) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)` or `[2,1]`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if inner.trim().is_empty() {
            return Ok(Partition(vec![]));
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}
