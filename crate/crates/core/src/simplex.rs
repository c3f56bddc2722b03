//! Dense-tableau simplex over exact rationals.
//!
//! Solves `max c.x` subject to `A x <= b`, `x >= 0` with `b >= 0`, so the
//! origin is a starting basis and no phase one is needed. Bland's rule picks
//! the entering and leaving variables, which rules out cycling.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct Lp {
    /// Row-major constraint matrix, `rows x cols`.
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// The objective grows without limit along variable `column`.
    Unbounded {
        column: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: Rational,
    pub primal: Vec<Rational>,
    /// One multiplier per constraint row.
    pub dual: Vec<Rational>,
}

impl Lp {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Vec<Rational>) -> Result<Self, Error> {
        if a.len() != b.len() || a.iter().any(|row| row.len() != c.len()) {
            return Err(Error::InvalidWeights("constraint matrix shape mismatch".into()));
        }
        if b.iter().any(Signed::is_negative) {
            return Err(Error::InvalidWeights("right-hand side must be nonnegative".into()));
        }
        Ok(Lp { a, b, c })
    }

    pub fn rows(&self) -> usize {
        self.b.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    pub fn solve(&self) -> LpOutcome {
        let (m, n) = (self.rows(), self.cols());
        let width = n + m;
        // Row i: [A | I] with rhs; objective row holds reduced costs.
        let mut t: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                let mut row = self.a[i].clone();
                row.extend((0..m).map(|j| if i == j { one() } else { Rational::zero() }));
                row
            })
            .collect();
        let mut rhs = self.b.clone();
        let mut obj: Vec<Rational> = self.c.iter().map(|x| -x).collect();
        obj.extend((0..m).map(|_| Rational::zero()));
        let mut obj_value = Rational::zero();
        let mut basis: Vec<usize> = (n..width).collect();

        while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                if t[i][enter].is_positive() {
                    let ratio = &rhs[i] / &t[i][enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return LpOutcome::Unbounded { column: enter };
            };
            let pivot = t[r][enter].clone();
            for x in t[r].iter_mut() {
                *x /= &pivot;
            }
            rhs[r] /= &pivot;
            let pivot_row = t[r].clone();
            let pivot_rhs = rhs[r].clone();
            for i in 0..m {
                if i != r && !t[i][enter].is_zero() {
                    let f = t[i][enter].clone();
                    for (x, p) in t[i].iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *x -= &f * p;
                        }
                    }
                    rhs[i] -= &f * &pivot_rhs;
                }
            }
            if !obj[enter].is_zero() {
                let f = obj[enter].clone();
                for (x, p) in obj.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
                obj_value -= &f * &pivot_rhs;
            }
            basis[r] = enter;
        }

        let mut primal = vec![Rational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                primal[bv] = rhs[i].clone();
            }
        }
        let dual = obj[n..].to_vec();
        LpOutcome::Optimal(LpSolution { value: obj_value, primal, dual })
    }

    /// Primal feasibility, dual feasibility and equal objectives.
    pub fn certifies(&self, s: &LpSolution) -> bool {
        let (m, n) = (self.rows(), self.cols());
        if s.primal.len() != n || s.dual.len() != m {
            return false;
        }
        if s.primal.iter().chain(&s.dual).any(Signed::is_negative) {
            return false;
        }
        for i in 0..m {
            let lhs: Rational = (0..n).map(|j| &self.a[i][j] * &s.primal[j]).sum();
            if lhs > self.b[i] {
                return false;
            }
        }
        for j in 0..n {
            let lhs: Rational = (0..m).map(|i| &self.a[i][j] * &s.dual[i]).sum();
            if lhs < self.c[j] {
                return false;
            }
        }
        let primal_value: Rational = (0..n).map(|j| &self.c[j] * &s.primal[j]).sum();
        let dual_value: Rational = (0..m).map(|i| &self.b[i] * &s.dual[i]).sum();
        primal_value == s.value && dual_value == s.value
    }
}

fn one() -> Rational {
    crate::rational::int(1)
}
