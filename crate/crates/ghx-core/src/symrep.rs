//! Symmetric-group representation theory needed for isotypic
//! decompositions: partitions, characters via Murnaghan–Nakayama, and the
//! central idempotents `P_λ = (dim λ / r!) Σ_σ χ_λ(σ) ρ(σ)`.

use std::fmt;

use thiserror::Error;

use crate::graph::Permutation;
use crate::linalg::{LinalgError, SparseIntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymrepError {
    #[error("partitions of different sizes: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("prime {p} divides {r}!")]
    PrimeDividesOrder { p: u64, r: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A partition of `r` as weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, SymrepError> {
        if parts.contains(&0) {
            return Err(SymrepError::NotAPartition(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymrepError::NotAPartition(parts));
        }
        parts.shrink_to_fit();
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Dimension of the irreducible representation, by the hook formula.
    pub fn dimension(&self) -> u64 {
        let r = self.size();
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &li) in self.parts.iter().enumerate() {
            for j in 0..li {
                hooks *= (li - j + conj.parts[j] - i - 1) as u128;
            }
        }
        (factorial(r) as u128 / hooks) as u64
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (0..w).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> u64 {
        let mut z: u64 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let mult = self.parts[i..].iter().take_while(|&&p| p == k).count();
            z *= (k as u64).pow(mult as u32) * factorial(mult);
            i += mult;
        }
        factorial(self.size()) / z
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All partitions of `r`, in decreasing lexicographic order of parts
/// (`[r]` first, `[1^r]` last).
pub fn partitions(r: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            rec(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), &mut out);
    out
}

/// `χ_λ(σ)` for `σ` of cycle type `mu`, by Murnaghan–Nakayama on beta sets.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, SymrepError> {
    if lambda.size() != mu.size() {
        return Err(SymrepError::SizeMismatch(lambda.size(), mu.size()));
    }
    let k = lambda.parts.len();
    let beta: Vec<usize> = lambda.parts.iter().enumerate().map(|(i, &p)| p + k - 1 - i).collect();
    Ok(mn(beta, &mu.parts))
}

fn mn(beta: Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&t, rest)) = mu.split_first() else { return 1 };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < t || beta.contains(&(b - t)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - t && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - t;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(nb, rest);
    }
    total
}

/// Cycle type of a permutation as a partition.
pub fn cycle_type(sigma: &Permutation) -> Partition {
    Partition { parts: sigma.cycle_type() }
}

/// Isotypic projector, stored as an integer numerator over a positive
/// denominator: `P_λ = numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectorMatrix {
    pub lambda: Partition,
    pub numerator: SparseIntMatrix,
    pub denominator: i64,
}

impl ProjectorMatrix {
    /// Numerator reduced modulo `p`, scaled so that it represents `P_λ`
    /// itself over F_p (requires `p ∤ r!`).
    pub fn mod_p(&self, p: u64) -> Result<SparseIntMatrix, SymrepError> {
        let r = self.lambda.size();
        if (2..=r as u64).any(|k| k % p == 0) {
            return Err(SymrepError::PrimeDividesOrder { p, r });
        }
        let d = (self.denominator as u64) % p;
        let dinv = pow_mod(d, p - 2, p);
        let m = self.numerator.reduce_mod(p);
        Ok(SparseIntMatrix::from_accumulated(
            m.rows(),
            m.cols(),
            m.entries().map(|(r, c, v)| (r, c, ((v as u64 * dinv) % p) as i64)),
        ))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Assembles `P_λ` from the action matrices `rho(σ)` of every `σ ∈ S_r`.
pub fn isotypic_projector(
    lambda: &Partition,
    dim: usize,
    rho: &dyn Fn(&Permutation) -> SparseIntMatrix,
) -> Result<ProjectorMatrix, SymrepError> {
    let classes = class_sums(lambda.size(), dim, rho);
    from_class_sums(lambda, dim, &classes)
}

/// Every isotypic projector of an `S_r` action at once. Each `rho(σ)` is
/// evaluated a single time and folded into a conjugacy class sum, so the
/// cost of the action does not grow with the number of partitions.
pub fn isotypic_projectors(
    r: usize,
    dim: usize,
    rho: &dyn Fn(&Permutation) -> SparseIntMatrix,
) -> Result<Vec<ProjectorMatrix>, SymrepError> {
    let classes = class_sums(r, dim, rho);
    partitions(r).iter().map(|l| from_class_sums(l, dim, &classes)).collect()
}

fn class_sums(
    r: usize,
    dim: usize,
    rho: &dyn Fn(&Permutation) -> SparseIntMatrix,
) -> Vec<(Partition, SparseIntMatrix)> {
    let mut by_type: std::collections::BTreeMap<Vec<usize>, Vec<(usize, usize, i64)>> = Default::default();
    for sigma in Permutation::all(r) {
        let m = rho(&sigma);
        by_type.entry(sigma.cycle_type()).or_default().extend(m.entries());
    }
    by_type
        .into_iter()
        .map(|(parts, e)| (Partition { parts }, SparseIntMatrix::from_accumulated(dim, dim, e)))
        .collect()
}

fn from_class_sums(
    lambda: &Partition,
    dim: usize,
    classes: &[(Partition, SparseIntMatrix)],
) -> Result<ProjectorMatrix, SymrepError> {
    let mut contributions = Vec::new();
    for (mu, sum) in classes {
        let chi = character(lambda, mu)?;
        if chi != 0 {
            contributions.extend(sum.entries().map(|(i, j, v)| (i, j, v * chi)));
        }
    }
    let sum = SparseIntMatrix::from_accumulated(dim, dim, contributions);
    let numerator = sum.scale(lambda.dimension() as i64);
    let denominator = factorial(lambda.size()) as i64;
    // Reduce the fraction by the common content.
    let g = numerator.entries().fold(denominator, |g, (_, _, v)| gcd(g, v.abs()));
    let numerator = SparseIntMatrix::from_accumulated(dim, dim, numerator.entries().map(|(i, j, v)| (i, j, v / g)));
    Ok(ProjectorMatrix { lambda: lambda.clone(), numerator, denominator: denominator / g })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions(0).len(), 1);
        let counts: Vec<usize> = (0..=8).map(|r| partitions(r).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn s3_characters_by_brute_force() {
        // χ_[2,1](σ) = (#fixed points) - 1 on S_3, computed from the
        // permutation representation minus the trivial one.
        for s in Permutation::all(3) {
            let fixed = (0..3).filter(|&i| s.apply(i) == i).count() as i64;
            assert_eq!(character(&p(&[2, 1]), &cycle_type(&s)).unwrap(), fixed - 1);
            assert_eq!(character(&p(&[1, 1, 1]), &cycle_type(&s)).unwrap(), s.sign() as i64);
            assert_eq!(character(&p(&[3]), &cycle_type(&s)).unwrap(), 1);
        }
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert!(character(&p(&[2, 1]), &p(&[2])).is_err());
    }

    #[test]
    fn orthogonality_up_to_six() {
        for r in 1..=6 {
            let ps = partitions(r);
            for a in &ps {
                assert_eq!(character(a, &p(&vec![1; r])).unwrap() as u64, a.dimension());
                for b in &ps {
                    let s: i64 = ps
                        .iter()
                        .map(|mu| mu.class_size() as i64 * character(a, mu).unwrap() * character(b, mu).unwrap())
                        .sum();
                    assert_eq!(s, if a == b { factorial(r) as i64 } else { 0 });
                }
            }
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn regular_representation_of_s3() {
        // Left regular representation of S_3 on itself.
        let elems = Permutation::all(3);
        let idx = |q: &Permutation| elems.iter().position(|e| e == q).unwrap();
        let rho = |s: &Permutation| {
            let e: Vec<(usize, usize, i64)> = elems.iter().map(|t| (idx(&s.compose(t)), idx(t), 1)).collect();
            SparseIntMatrix::new(6, 6, e).unwrap()
        };
        let mut sum = SparseIntMatrix::zero(6, 6);
        for lam in partitions(3) {
            let pr = isotypic_projector(&lam, 6, &rho).unwrap();
            let pm = pr.mod_p(32189).unwrap();
            let sq = crate::linalg::multiply_mod_p(&pm, &pm, 32189).unwrap();
            assert_eq!(sq, pm);
            let rank = crate::linalg::rank_mod_p(&pm, 32189).unwrap().rank as u64;
            assert_eq!(rank, lam.dimension() * lam.dimension());
            sum = sum.add_scaled(&pm, 1).unwrap().reduce_mod(32189);
        }
        assert_eq!(sum, SparseIntMatrix::identity(6));
    }
}
