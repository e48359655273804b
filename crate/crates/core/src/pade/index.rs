use std::collections::HashMap;

use crate::arith::{binomial, Rational};

/// Ω = {κ ∈ ℕ^m : N−1 ≤ |κ| ≤ N} ordered with Θ = {|κ| = N} first, each
/// grade in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIndex {
    m: usize,
    n: u32,
    omega: Vec<Vec<u32>>,
    theta: usize,
    pos: HashMap<Vec<u32>, usize>,
}

fn grade(m: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == m {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        grade(m, total - first, prefix, out);
        prefix.pop();
    }
}

impl GradedIndex {
    pub fn new(m: usize, n: u32) -> Self {
        assert!(m >= 1 && n >= 1, "need m ≥ 1 and N ≥ 1");
        let mut omega = Vec::new();
        grade(m, n, &mut Vec::new(), &mut omega);
        let theta = omega.len();
        grade(m, n - 1, &mut Vec::new(), &mut omega);
        let pos = omega
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        GradedIndex {
            m,
            n,
            omega,
            theta,
            pos,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn omega(&self) -> usize {
        self.omega.len()
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn kappa(&self, i: usize) -> &[u32] {
        &self.omega[i]
    }

    pub fn all(&self) -> &[Vec<u32>] {
        &self.omega
    }

    pub fn position(&self, k: &[u32]) -> Option<usize> {
        self.pos.get(k).copied()
    }

    /// Position of κ + Σ delta, `None` if a coordinate turns negative or the
    /// result leaves Ω.
    pub fn shifted(&self, i: usize, delta: &[(usize, i64)]) -> Option<usize> {
        let mut k: Vec<i64> = self.omega[i].iter().map(|&x| x as i64).collect();
        for &(j, d) in delta {
            k[j] += d;
        }
        if k.iter().any(|&x| x < 0) {
            return None;
        }
        self.position(&k.iter().map(|&x| x as u32).collect::<Vec<_>>())
    }

    pub fn is_theta(&self, i: usize) -> bool {
        i < self.theta
    }

    /// ω/θ, equal to 2 − (m−1)/(N+m−1).
    pub fn ratio(&self) -> Rational {
        Rational::new(self.omega().into(), self.theta.into())
    }

    pub fn expected_sizes(m: usize, n: u32) -> (u64, u64) {
        let (m, n) = (m as u64, n as u64);
        let theta = binomial(n + m - 1, m - 1);
        let lower = binomial(n + m - 2, m - 1);
        let t: u64 = theta.try_into().expect("small");
        let l: u64 = lower.try_into().expect("small");
        (t + l, t)
    }
}
