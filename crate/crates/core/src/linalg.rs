//! Exact sparse linear algebra over the supported fields.
//!
//! Elimination is fraction-free: rows are combined by cross-multiplication
//! and the content (rational gcd, or the leading unit over a finite field)
//! is divided out after every step, which keeps entry sizes polynomially
//! bounded without ever leaving exact arithmetic.

use crate::field::{Field, FieldDescriptor, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(u32, Scalar)>;

pub fn sv_is_zero(v: &SparseVec) -> bool {
    v.is_empty()
}

pub fn sv_get<'a>(v: &'a SparseVec, idx: u32) -> Option<&'a Scalar> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|i| &v[i].1)
}

pub fn sv_scale(field: &Field, v: &SparseVec, c: &Scalar) -> SparseVec {
    if field.is_zero(c) {
        return Vec::new();
    }
    v.iter()
        .map(|(i, x)| (*i, field.mul(x, c)))
        .filter(|(_, x)| !field.is_zero(x))
        .collect()
}

/// `ca*a + cb*b`, merged and with zeros dropped.
pub fn sv_combine(
    field: &Field,
    a: &SparseVec,
    ca: &Scalar,
    b: &SparseVec,
    cb: &Scalar,
) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let ca_zero = field.is_zero(ca);
    let cb_zero = field.is_zero(cb);
    while i < a.len() || j < b.len() {
        let next_a = a.get(i).map(|e| e.0);
        let next_b = b.get(j).map(|e| e.0);
        match (next_a, next_b) {
            (Some(ia), Some(ib)) if ia == ib => {
                let v = field.add(&field.mul(&a[i].1, ca), &field.mul(&b[j].1, cb));
                if !field.is_zero(&v) {
                    out.push((ia, v));
                }
                i += 1;
                j += 1;
            }
            (Some(ia), next_b) if next_b.map_or(true, |ib| ia < ib) => {
                if !ca_zero {
                    let v = field.mul(&a[i].1, ca);
                    if !field.is_zero(&v) {
                        out.push((ia, v));
                    }
                }
                i += 1;
            }
            (_, Some(ib)) => {
                if !cb_zero {
                    let v = field.mul(&b[j].1, cb);
                    if !field.is_zero(&v) {
                        out.push((ib, v));
                    }
                }
                j += 1;
            }
            _ => unreachable!(),
        }
    }
    out
}

fn rational_parts(s: &Scalar) -> Vec<&BigRational> {
    match s {
        Scalar::Rational(r) => vec![r],
        Scalar::Cyclotomic(c) => c.iter().collect(),
        Scalar::Finite(_) => Vec::new(),
    }
}

/// Divide the joint content out of a collection of vectors and scalars.
/// Over the rationals (and cyclotomics) this clears denominators and the
/// integer gcd, flipping signs so the first nonzero coordinate is positive.
/// Over a finite field it scales the first nonzero coordinate to 1.
pub fn content_normalize(field: &Field, vecs: &mut [&mut SparseVec], extra: &mut [&mut Scalar]) {
    match field.descriptor() {
        FieldDescriptor::Finite { .. } => {
            let lead = vecs
                .iter()
                .flat_map(|v| v.iter().map(|(_, s)| s.clone()))
                .chain(extra.iter().map(|s| (**s).clone()))
                .find(|s| !field.is_zero(s));
            let Some(lead) = lead else { return };
            if field.is_one(&lead) {
                return;
            }
            let inv = field.inv(&lead).expect("nonzero");
            scale_all(field, vecs, extra, &inv);
        }
        _ => {
            let mut num_gcd = BigInt::zero();
            let mut den_lcm = BigInt::one();
            let mut first_negative = None;
            {
                let all = vecs
                    .iter()
                    .flat_map(|v| v.iter().map(|(_, s)| s))
                    .chain(extra.iter().map(|s| &**s));
                for s in all {
                    for r in rational_parts(s) {
                        if r.is_zero() {
                            continue;
                        }
                        if first_negative.is_none() {
                            first_negative = Some(r.is_negative());
                        }
                        num_gcd = num_gcd.gcd(r.numer());
                        den_lcm = den_lcm.lcm(r.denom());
                    }
                }
            }
            if num_gcd.is_zero() {
                return;
            }
            let mut factor = BigRational::new(den_lcm, num_gcd);
            if first_negative == Some(true) {
                factor = -factor;
            }
            if factor.is_one() {
                return;
            }
            let factor = match field.descriptor() {
                FieldDescriptor::Rationals => Scalar::Rational(factor),
                FieldDescriptor::Cyclotomic(_) => {
                    let mut c = match field.zero() {
                        Scalar::Cyclotomic(c) => c,
                        _ => unreachable!(),
                    };
                    c[0] = factor;
                    Scalar::Cyclotomic(c)
                }
                FieldDescriptor::Finite { .. } => unreachable!(),
            };
            scale_all(field, vecs, extra, &factor);
        }
    }
}

fn scale_all(field: &Field, vecs: &mut [&mut SparseVec], extra: &mut [&mut Scalar], c: &Scalar) {
    for v in vecs.iter_mut() {
        for (_, s) in v.iter_mut() {
            *s = field.mul(s, c);
        }
    }
    for s in extra.iter_mut() {
        **s = field.mul(s, c);
    }
}

/// One echelon row: leading (pivot) index, the row itself, and optionally
/// its expression over the accepted basis vectors.
struct EchRow {
    pivot: u32,
    vec: SparseVec,
    expr: SparseVec,
}

/// Outcome of feeding one vector to [`Echelon::process`].
pub enum Processed {
    /// The vector was independent; it became basis vector `index`.
    Independent { index: usize },
    /// The vector equals the given combination of earlier basis vectors.
    Dependent { combo: Vec<(u32, Scalar)> },
}

/// Incremental row echelon with optional expression tracking.
///
/// Vectors are fed in a fixed order; the accepted ones form the
/// lexicographically-first maximal independent subsequence, and dependent
/// vectors are returned as exact combinations of the accepted ones.
pub struct Echelon<'f> {
    field: &'f Field,
    rows: Vec<EchRow>,
    track: bool,
    accepted: usize,
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            track: true,
            accepted: 0,
        }
    }

    /// Rank-only variant; `process` then reports empty combos.
    pub fn rank_only(field: &'f Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            track: false,
            accepted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn process(&mut self, vec: SparseVec) -> Processed {
        let field = self.field;
        let mut r = vec;
        let mut combo: SparseVec = Vec::new();
        let mut sigma = field.one();
        for row in &self.rows {
            let Some(rho) = sv_get(&r, row.pivot).cloned() else {
                continue;
            };
            let pi = sv_get(&row.vec, row.pivot).expect("pivot entry").clone();
            let neg_rho = field.neg(&rho);
            r = sv_combine(field, &r, &pi, &row.vec, &neg_rho);
            if self.track {
                combo = sv_combine(field, &combo, &pi, &row.expr, &rho);
                sigma = field.mul(&sigma, &pi);
                content_normalize(field, &mut [&mut r, &mut combo], &mut [&mut sigma]);
            } else {
                content_normalize(field, &mut [&mut r], &mut []);
            }
        }
        if sv_is_zero(&r) {
            let inv_sigma = field.inv(&sigma).expect("sigma nonzero");
            let combo = sv_scale(field, &combo, &inv_sigma);
            return Processed::Dependent { combo };
        }
        let index = self.accepted;
        self.accepted += 1;
        let mut expr = Vec::new();
        if self.track {
            // sigma * v - sum(combo_j w_j) = r
            let minus_one = field.from_i64(-1);
            expr = sv_combine(
                field,
                &vec![(index as u32, sigma)],
                &field.one(),
                &combo,
                &minus_one,
            );
        }
        let mut row = EchRow {
            pivot: r[0].0,
            vec: r,
            expr,
        };
        content_normalize(field, &mut [&mut row.vec, &mut row.expr], &mut []);
        let pos = self
            .rows
            .binary_search_by_key(&row.pivot, |e| e.pivot)
            .expect_err("duplicate pivot");
        self.rows.insert(pos, row);
        Processed::Independent { index }
    }

    /// Residual of `vec` against the current echelon (content-normalized);
    /// empty iff `vec` lies in the span.
    pub fn residual(&self, vec: &SparseVec) -> SparseVec {
        let field = self.field;
        let mut r = vec.clone();
        for row in &self.rows {
            let Some(rho) = sv_get(&r, row.pivot).cloned() else {
                continue;
            };
            let pi = sv_get(&row.vec, row.pivot).expect("pivot entry").clone();
            let neg_rho = field.neg(&rho);
            r = sv_combine(field, &r, &pi, &row.vec, &neg_rho);
            content_normalize(field, &mut [&mut r], &mut []);
        }
        r
    }

    /// Insert without caring about the combo; returns true when independent.
    pub fn insert(&mut self, vec: SparseVec) -> bool {
        matches!(self.process(vec), Processed::Independent { .. })
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: &Field, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::rank_only(field);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Basis of the solution space of `M x = 0`, where the rows of `M` are
/// given as sparse vectors over `ncols` unknowns. Deterministic: one basis
/// vector per free column, in column order.
pub fn nullspace_basis(field: &Field, rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::rank_only(field);
    for row in rows {
        ech.insert(row.clone());
    }
    let mut is_pivot = vec![false; ncols];
    for row in &ech.rows {
        is_pivot[row.pivot as usize] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        // Solve for pivots by back-substitution, descending pivot order.
        let mut x: Vec<(u32, Scalar)> = vec![(free as u32, field.one())];
        for row in ech.rows.iter().rev() {
            let mut dot = field.zero();
            for (idx, coef) in &row.vec {
                if *idx == row.pivot {
                    continue;
                }
                if let Some(xv) = sv_get(&x, *idx) {
                    dot = field.add(&dot, &field.mul(coef, xv));
                }
            }
            if !field.is_zero(&dot) {
                let pivot_entry = sv_get(&row.vec, row.pivot).unwrap();
                let val = field.neg(&field.div(&dot, pivot_entry).expect("pivot nonzero"));
                let pos = x
                    .binary_search_by_key(&row.pivot, |e| e.0)
                    .expect_err("pivot already set");
                x.insert(pos, (row.pivot, val));
            }
        }
        basis.push(x);
    }
    basis
}

/// Column-major sparse matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = SparseMat::zero(n, n);
        for j in 0..n {
            m.cols[j] = vec![(j as u32, field.one())];
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn set_col(&mut self, j: usize, v: SparseVec) {
        debug_assert!(v.iter().all(|(i, _)| (*i as usize) < self.nrows));
        self.cols[j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Matrix-vector product `M x` for sparse `x` over the domain.
    pub fn apply(&self, field: &Field, x: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        let one = field.one();
        for (j, c) in x {
            acc = sv_combine(field, &acc, &one, &self.cols[*j as usize], c);
        }
        acc
    }

    /// Composition `self * other` (apply `other` first).
    pub fn compose(&self, field: &Field, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows, "composition shape mismatch");
        let mut out = SparseMat::zero(self.nrows, other.ncols);
        for j in 0..other.ncols {
            out.cols[j] = self.apply(field, &other.cols[j]);
        }
        out
    }

    pub fn add(&self, field: &Field, other: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let one = field.one();
        let mut out = SparseMat::zero(self.nrows, self.ncols);
        for j in 0..self.ncols {
            out.cols[j] = sv_combine(field, &self.cols[j], &one, &other.cols[j], &one);
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let one = field.one();
        let minus = field.from_i64(-1);
        let mut out = SparseMat::zero(self.nrows, self.ncols);
        for j in 0..self.ncols {
            out.cols[j] = sv_combine(field, &self.cols[j], &one, &other.cols[j], &minus);
        }
        out
    }

    pub fn scale(&self, field: &Field, c: &Scalar) -> SparseMat {
        let mut out = SparseMat::zero(self.nrows, self.ncols);
        for j in 0..self.ncols {
            out.cols[j] = sv_scale(field, &self.cols[j], c);
        }
        out
    }

    pub fn pow(&self, field: &Field, e: usize) -> SparseMat {
        assert_eq!(self.nrows, self.ncols);
        let mut acc = SparseMat::identity(field, self.nrows);
        for _ in 0..e {
            acc = self.compose(field, &acc);
        }
        acc
    }

    /// Rows of the matrix as sparse vectors (for rank/nullspace work).
    pub fn rows_sparse(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i as usize].push((j as u32, v.clone()));
            }
        }
        rows
    }

    pub fn rank(&self, field: &Field) -> usize {
        rank(field, self.rows_sparse())
    }

    /// Flatten to a single sparse vector (column-major layout).
    pub fn flatten(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out.push(((j * self.nrows + *i as usize) as u32, v.clone()));
            }
        }
        out
    }

    /// Entries as `(row, col, value)` triplets in column-major order.
    pub fn triplets(&self) -> Vec<(u32, u32, Scalar)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out.push((*i, j as u32, v.clone()));
            }
        }
        out
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (u32, u32, Scalar)>,
    ) -> SparseMat {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); ncols];
        for (i, j, v) in triplets {
            cols[j as usize].push((i, v));
        }
        for c in &mut cols {
            c.sort_by_key(|e| e.0);
        }
        SparseMat { nrows, ncols, cols }
    }
}

/// Minimal polynomial of a square matrix, monic, ascending coefficients.
pub fn minimal_polynomial(field: &Field, m: &SparseMat) -> Vec<Scalar> {
    assert_eq!(m.nrows(), m.ncols());
    let mut ech = Echelon::new(field);
    let mut power = SparseMat::identity(field, m.nrows());
    loop {
        match ech.process(power.flatten()) {
            Processed::Independent { .. } => {}
            Processed::Dependent { combo } => {
                // power = sum combo_j * M^j, so minpoly = x^k - sum combo_j x^j.
                let k = ech.rank();
                let mut coeffs = vec![field.zero(); k + 1];
                coeffs[k] = field.one();
                for (j, c) in combo {
                    coeffs[j as usize] = field.neg(&c);
                }
                return coeffs;
            }
        }
        power = m.compose(field, &power);
    }
}

/// Evaluate a polynomial (ascending coefficients) at a square matrix.
pub fn matrix_poly_eval(field: &Field, coeffs: &[Scalar], m: &SparseMat) -> SparseMat {
    let n = m.nrows();
    let mut acc = SparseMat::zero(n, n);
    for c in coeffs.iter().rev() {
        acc = m.compose(field, &acc);
        if !field.is_zero(c) {
            acc = acc.add(field, &SparseMat::identity(field, n).scale(field, c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn q() -> Field {
        Field::new(FieldDescriptor::Rationals).unwrap()
    }

    fn sv(field: &Field, entries: &[(u32, i64)]) -> SparseVec {
        entries
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|(i, v)| (*i, field.from_i64(*v)))
            .collect()
    }

    #[test]
    fn combine_and_scale() {
        let f = q();
        let a = sv(&f, &[(0, 1), (2, 3)]);
        let b = sv(&f, &[(0, 1), (1, 2)]);
        let c = sv_combine(&f, &a, &f.from_i64(2), &b, &f.from_i64(-2));
        assert_eq!(c, sv(&f, &[(1, -4), (2, 6)]));
    }

    #[test]
    fn echelon_rank_and_combo() {
        let f = q();
        let mut ech = Echelon::new(&f);
        assert!(matches!(
            ech.process(sv(&f, &[(0, 1), (1, 1)])),
            Processed::Independent { index: 0 }
        ));
        assert!(matches!(
            ech.process(sv(&f, &[(1, 2)])),
            Processed::Independent { index: 1 }
        ));
        // (3, 5) = 3*(1,1) + 1*(0,2)
        match ech.process(sv(&f, &[(0, 3), (1, 5)])) {
            Processed::Dependent { combo } => {
                assert_eq!(combo, sv(&f, &[(0, 3), (1, 1)]));
            }
            _ => panic!("expected dependent"),
        }
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn echelon_over_gf4() {
        let f = Field::new(FieldDescriptor::Finite { p: 2, k: 2 }).unwrap();
        let g = f.generator().unwrap();
        let mut ech = Echelon::new(&f);
        let v1 = vec![(0u32, f.one()), (1u32, g.clone())];
        let v2 = vec![(0u32, g.clone()), (1u32, f.mul(&g, &g))];
        assert!(ech.insert(v1));
        // v2 = g * v1
        match ech.process(v2) {
            Processed::Dependent { combo } => {
                assert_eq!(combo, vec![(0u32, g)]);
            }
            _ => panic!("v2 is a multiple of v1"),
        }
    }

    #[test]
    fn nullspace_small() {
        let f = q();
        // x0 + x1 + x2 = 0, x1 - x2 = 0  =>  kernel spanned by (-2, 1, 1).
        let rows = vec![sv(&f, &[(0, 1), (1, 1), (2, 1)]), sv(&f, &[(1, 1), (2, -1)])];
        let basis = nullspace_basis(&f, &rows, 3);
        assert_eq!(basis.len(), 1);
        let x = &basis[0];
        for row in &rows {
            let mut dot = f.zero();
            for (i, c) in row {
                if let Some(v) = sv_get(x, *i) {
                    dot = f.add(&dot, &f.mul(c, v));
                }
            }
            assert!(f.is_zero(&dot));
        }
    }

    #[test]
    fn matrix_ops() {
        let f = q();
        let m = SparseMat::from_triplets(
            2,
            2,
            vec![
                (0, 0, f.from_i64(0)),
                (0, 1, f.from_i64(1)),
                (1, 0, f.from_i64(-1)),
                (1, 1, f.from_i64(0)),
            ],
        );
        // Rotation-like matrix: m^2 = -I, so m^4 = I and the minimal
        // polynomial is x^2 + 1.
        let m4 = m.pow(&f, 4);
        assert_eq!(m4, SparseMat::identity(&f, 2));
        let mp = minimal_polynomial(&f, &m);
        assert_eq!(mp, vec![f.one(), f.zero(), f.one()]);
        let eval = matrix_poly_eval(&f, &mp, &m);
        assert!(eval.is_zero());
        assert_eq!(m.rank(&f), 2);
    }
}
