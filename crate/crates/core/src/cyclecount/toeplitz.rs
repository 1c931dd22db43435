//! The banded Hessenberg matrix whose determinant is the cycle-index polynomial.
//!
//! Rows and columns run over `1..=n`. Entry `(k, j)` is `i^{j-k} Y_{j-k+1}` on the band
//! `0 <= j-k <= l-1`, `i*j` on the subdiagonal `k = j+1`, and zero elsewhere. Entries live
//! in the ring of polynomials in `Y_1..Y_l` over the Gaussian integers; the imaginary
//! parts cancel in the determinant.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::CycleIndexPoly;
use crate::error::{Error, Result};
use crate::exactnum::ExactInt;

/// Largest `n` accepted by [`toeplitz_determinant`].
pub const TOEPLITZ_MAX_N: u64 = 8;

/// Gaussian integer `re + i*im`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gaussian {
    pub re: ExactInt,
    pub im: ExactInt,
}

impl Gaussian {
    pub fn new(re: ExactInt, im: ExactInt) -> Self {
        Self { re, im }
    }

    /// `i^k`
    pub fn i_pow(k: usize) -> Self {
        let (re, im) = match k % 4 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Self::new(ExactInt::from(re), ExactInt::from(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }
}

/// Sparse polynomial over the Gaussian integers; keys are exponent vectors with
/// trailing zeros trimmed, so polynomials in different numbers of variables compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussianPoly {
    terms: BTreeMap<Vec<u32>, Gaussian>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl GaussianPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Gaussian::new(ExactInt::one(), ExactInt::zero()))
    }

    pub fn constant(c: Gaussian) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(e: Vec<u32>, c: Gaussian) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(e), c);
        }
        p
    }

    /// `c * Y_j`
    pub fn var(j: usize, c: Gaussian) -> Self {
        let mut e = vec![0; j];
        e[j - 1] = 1;
        Self::term(e, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(terms: &mut BTreeMap<Vec<u32>, Gaussian>, e: Vec<u32>, c: Gaussian) {
        match terms.get_mut(&e) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    terms.remove(&e);
                }
            }
            None if !c.is_zero() => {
                terms.insert(e, c);
            }
            None => {}
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            Self::insert_add(&mut terms, e.clone(), c.clone());
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let len = ea.len().max(eb.len());
                let e: Vec<u32> = (0..len)
                    .map(|i| ea.get(i).unwrap_or(&0) + eb.get(i).unwrap_or(&0))
                    .collect();
                Self::insert_add(&mut terms, e, ca.mul(cb));
            }
        }
        Self { terms }
    }

    /// Splits into real and imaginary parts as integer polynomials in `l` variables.
    pub fn split(&self, l: usize) -> (CycleIndexPoly, CycleIndexPoly) {
        let re = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.re.clone()));
        let im = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.im.clone()));
        (
            CycleIndexPoly::from_terms(l, re),
            CycleIndexPoly::from_terms(l, im),
        )
    }
}

/// The `n x n` matrix for cycle lengths `<= l`.
pub fn toeplitz_matrix(n: usize, l: usize) -> Vec<Vec<GaussianPoly>> {
    (1..=n)
        .map(|k| {
            (1..=n)
                .map(|j| {
                    if j >= k && j - k < l {
                        GaussianPoly::var(j - k + 1, Gaussian::i_pow(j - k))
                    } else if k == j + 1 {
                        GaussianPoly::constant(Gaussian::new(ExactInt::zero(), ExactInt::from(j)))
                    } else {
                        GaussianPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// How to expand the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeterminantMethod {
    /// Laplace expansion along the first row.
    Cofactor,
    /// Berkowitz's division-free characteristic polynomial recurrence.
    Berkowitz,
}

fn cofactor_det(m: &[Vec<GaussianPoly>], rows: usize, cols: &mut Vec<usize>) -> GaussianPoly {
    let size = cols.len();
    if size == 0 {
        return GaussianPoly::one();
    }
    let row = rows;
    let mut total = GaussianPoly::zero();
    for idx in 0..size {
        let c = cols[idx];
        if m[row][c].is_zero() {
            continue;
        }
        cols.remove(idx);
        let minor = cofactor_det(m, rows + 1, cols);
        cols.insert(idx, c);
        let term = m[row][c].mul(&minor);
        total = if idx % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

fn berkowitz_det(m: &[Vec<GaussianPoly>]) -> GaussianPoly {
    let n = m.len();
    if n == 0 {
        return GaussianPoly::one();
    }
    // coefficients of det(xI - A_r), highest power first
    let mut c = vec![GaussianPoly::one(), m[0][0].neg()];
    for r in 1..n {
        // column t = [1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S]
        let mut t = Vec::with_capacity(r + 2);
        t.push(GaussianPoly::one());
        t.push(m[r][r].neg());
        let mut v: Vec<GaussianPoly> = (0..r).map(|i| m[i][r].clone()).collect(); // A^k S
        for k in 0..r {
            let dot = (0..r).fold(GaussianPoly::zero(), |acc, i| acc.add(&m[r][i].mul(&v[i])));
            t.push(dot.neg());
            if k + 1 < r {
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(GaussianPoly::zero(), |acc, j| acc.add(&m[i][j].mul(&v[j])))
                    })
                    .collect();
            }
        }
        c = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(GaussianPoly::zero(), |acc, j| acc.add(&t[i - j].mul(&c[j])))
            })
            .collect();
    }
    if n.is_multiple_of(2) {
        c[n].clone()
    } else {
        c[n].neg()
    }
}

/// Determinant of an arbitrary square matrix over `GaussianPoly`.
pub fn gaussian_determinant(m: &[Vec<GaussianPoly>], method: DeterminantMethod) -> GaussianPoly {
    match method {
        DeterminantMethod::Cofactor => cofactor_det(m, 0, &mut (0..m.len()).collect()),
        DeterminantMethod::Berkowitz => berkowitz_det(m),
    }
}

/// Determinant of the `n x n` matrix with the chosen expansion, as an integer polynomial.
/// Fails if an imaginary part survives.
pub fn toeplitz_determinant_with(
    n: u64,
    l: usize,
    method: DeterminantMethod,
) -> Result<CycleIndexPoly> {
    if n > TOEPLITZ_MAX_N {
        return Err(Error::AboveCap {
            what: "n",
            value: n,
            cap: TOEPLITZ_MAX_N,
        });
    }
    let det = gaussian_determinant(&toeplitz_matrix(n as usize, l), method);
    let (re, im) = det.split(l);
    if !im.is_empty() {
        return Err(Error::ImaginaryResidue { n: n as usize, l });
    }
    Ok(re)
}

/// Cofactor expansion up to size 6, Berkowitz above.
pub fn toeplitz_determinant(n: u64, l: usize) -> Result<CycleIndexPoly> {
    let method = if n <= 6 {
        DeterminantMethod::Cofactor
    } else {
        DeterminantMethod::Berkowitz
    };
    toeplitz_determinant_with(n, l, method)
}
