//! Square matrices with sparse polynomial entries, exact minors and ranks.
//!
//! Determinants use cofactor expansion up to 4x4 and fraction-free Bareiss
//! elimination above — exact division with no fraction blowup. Symbolic rank
//! is rank over the fraction field (largest nonvanishing minor size).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::poly::Poly;

/// An `n x n` matrix over `K[x1..xr]` with absent entries equal to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<K: Field> {
    n: usize,
    n_vars: usize,
    field: K,
    entries: BTreeMap<(usize, usize), Poly<K>>,
}

impl<K: Field> PolyMatrix<K> {
    pub fn new(field: K, n: usize, n_vars: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("matrix dimension must be at least 1"));
        }
        Ok(PolyMatrix {
            n,
            n_vars,
            field,
            entries: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    /// Sets entry at 1-based `(row, col)`; zero polynomials are dropped.
    pub fn set(&mut self, row: usize, col: usize, poly: Poly<K>) -> Result<()> {
        if row == 0 || row > self.n || col == 0 || col > self.n {
            return Err(Error::input(format!(
                "position ({row},{col}) out of range for an {n}x{n} matrix",
                n = self.n
            )));
        }
        if poly.n_vars() != self.n_vars {
            return Err(Error::input(format!(
                "entry has {} variables, matrix ring has {}",
                poly.n_vars(),
                self.n_vars
            )));
        }
        if poly.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), poly);
        }
        Ok(())
    }

    /// Entry at 1-based `(row, col)`; `None` means zero.
    pub fn get(&self, row: usize, col: usize) -> Option<&Poly<K>> {
        self.entries.get(&(row, col))
    }

    pub fn entry_or_zero(&self, row: usize, col: usize) -> Poly<K> {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.n_vars))
    }

    /// Nonzero positions in row-major order.
    pub fn nonzero_positions(&self) -> impl Iterator<Item = (usize, usize, &Poly<K>)> {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.entries.keys().all(|&(r, c)| r < c)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n || self.n_vars != rhs.n_vars || self.field != rhs.field {
            return Err(Error::input(
                "matrix product requires equal dimensions, variable counts, and fields",
            ));
        }
        let mut out = PolyMatrix::new(self.field.clone(), self.n, self.n_vars)?;
        for (&(i, k), a) in &self.entries {
            for j in 1..=self.n {
                if let Some(b) = rhs.entries.get(&(k, j)) {
                    let prod = a.mul(b, &self.field)?;
                    let sum = out.entry_or_zero(i, j).add(&prod, &self.field)?;
                    out.set(i, j, sum)?;
                }
            }
        }
        Ok(out)
    }

    /// `None` when the square is the zero matrix, otherwise the first
    /// (row-major) nonzero position of the square and its polynomial.
    pub fn square_zero_witness(&self) -> Result<Option<(usize, usize, Poly<K>)>> {
        let square = self.mul(self)?;
        Ok(square
            .entries
            .into_iter()
            .next()
            .map(|((r, c), p)| (r, c, p)))
    }

    pub fn is_square_zero(&self) -> Result<bool> {
        Ok(self.square_zero_witness()?.is_none())
    }

    /// Determinant of the submatrix picked by 1-based `rows` x `cols`,
    /// in the given selection order.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly<K>> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::input(format!(
                "minor selection must be square and nonempty, got {} rows and {} cols",
                rows.len(),
                cols.len()
            )));
        }
        for &r in rows {
            if r == 0 || r > self.n {
                return Err(Error::input(format!("row index {r} out of range")));
            }
        }
        for &c in cols {
            if c == 0 || c > self.n {
                return Err(Error::input(format!("column index {c} out of range")));
            }
        }
        let k = rows.len();
        let sub: Vec<Vec<Poly<K>>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.entry_or_zero(r, c)).collect())
            .collect();
        if k <= 4 {
            cofactor_det(&sub, &self.field)
        } else {
            bareiss_det(sub, &self.field)
        }
    }

    /// Rank over the fraction field: the largest `t` with a nonzero
    /// `t x t` minor, computed by fraction-free elimination with pivoting.
    #[allow(clippy::needless_range_loop)]
    pub fn symbolic_rank(&self) -> usize {
        let mut m: Vec<Vec<Poly<K>>> = (1..=self.n)
            .map(|r| (1..=self.n).map(|c| self.entry_or_zero(r, c)).collect())
            .collect();
        let field = &self.field;
        let n = self.n;
        let mut prev: Poly<K> = Poly::constant(field, self.n_vars, field.one());
        let mut rank = 0;
        for k in 0..n {
            // pivot search in the remaining block
            let mut pivot = None;
            'scan: for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero() {
                        pivot = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            rank += 1;
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let a = m[k][k].mul(&m[i][j], field).expect("same ring");
                    let b = m[i][k].mul(&m[k][j], field).expect("same ring");
                    let num = a.sub(&b, field).expect("same ring");
                    m[i][j] = num
                        .div_exact(&prev, field)
                        .expect("fraction-free elimination divides exactly");
                }
            }
            for i in (k + 1)..n {
                m[i][k] = Poly::zero(self.n_vars);
            }
            prev = m[k][k].clone();
        }
        rank
    }

    /// Exact rank of the scalar matrix obtained by evaluating at `point`.
    pub fn rank_at_point(&self, point: &[K::Elem]) -> Result<usize> {
        if point.len() != self.n_vars {
            return Err(Error::input(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.n_vars
            )));
        }
        let mut rows: Vec<Vec<K::Elem>> = vec![vec![self.field.zero(); self.n]; self.n];
        for (&(r, c), p) in &self.entries {
            rows[r - 1][c - 1] = p.eval(point, &self.field)?;
        }
        Ok(scalar_rank(&self.field, rows))
    }
}

/// Row-reduction rank of a dense scalar matrix over any exact field.
#[allow(clippy::needless_range_loop)]
pub(crate) fn scalar_rank<K: Field>(field: &K, mut rows: Vec<Vec<K::Elem>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n_cols = rows[0].len();
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        for c in col..n_cols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !field.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..n_cols {
                    let sub = field.mul(&factor, &rows[rank][c]);
                    rows[r][c] = field.sub(&rows[r][c], &sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn cofactor_det<K: Field>(m: &[Vec<Poly<K>>], field: &K) -> Result<Poly<K>> {
    let k = m.len();
    let n_vars = m[0][0].n_vars();
    if k == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Poly::zero(n_vars);
    for (j, top) in m[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let sub: Vec<Vec<Poly<K>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = cofactor_det(&sub, field)?;
        let term = top.mul(&cof, field)?;
        acc = if j % 2 == 0 {
            acc.add(&term, field)?
        } else {
            acc.sub(&term, field)?
        };
    }
    Ok(acc)
}

fn bareiss_det<K: Field>(mut m: Vec<Vec<Poly<K>>>, field: &K) -> Result<Poly<K>> {
    let n = m.len();
    let n_vars = m[0][0].n_vars();
    let mut prev: Poly<K> = Poly::constant(field, n_vars, field.one());
    let mut sign_flip = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Poly::zero(n_vars));
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let a = m[k][k].mul(&m[i][j], field)?;
                let b = m[i][k].mul(&m[k][j], field)?;
                let num = a.sub(&b, field)?;
                m[i][j] = num
                    .div_exact(&prev, field)
                    .ok_or_else(|| Error::invariant("Bareiss division failed"))?;
            }
            m[i][k] = Poly::zero(n_vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg(field) } else { det })
}

/// On-disk form of a polynomial matrix.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PolyMatrixFile {
    pub n: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub entries: Vec<MatrixEntryFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixEntryFile {
    pub row: usize,
    pub col: usize,
    pub poly: String,
}

/// A polynomial matrix over either supported field, plus the optional
/// degree tuple carried by the file.
pub enum DynMatrix {
    Q(PolyMatrix<Rationals>),
    Fp(PolyMatrix<PrimeField>),
}

pub struct LoadedMatrix {
    pub matrix: DynMatrix,
    pub degree_tuple: Option<Vec<i64>>,
}

pub fn load_matrix_json(text: &str) -> Result<LoadedMatrix> {
    let file: PolyMatrixFile =
        serde_json::from_str(text).map_err(|e| Error::input(format!("bad matrix JSON: {e}")))?;
    file.field.validate()?;
    let matrix = match file.field {
        FieldSpec::Q => DynMatrix::Q(build_matrix(Rationals, &file)?),
        FieldSpec::Fp { p } => DynMatrix::Fp(build_matrix(PrimeField::new(p)?, &file)?),
    };
    Ok(LoadedMatrix {
        matrix,
        degree_tuple: file.d,
    })
}

fn build_matrix<K: Field>(field: K, file: &PolyMatrixFile) -> Result<PolyMatrix<K>> {
    let mut m = PolyMatrix::new(field.clone(), file.n, file.r)?;
    for e in &file.entries {
        let p = Poly::parse(&field, file.r, &e.poly)?;
        let prior = m.get(e.row, e.col).cloned();
        if prior.is_some() {
            return Err(Error::input(format!(
                "duplicate entry at ({},{})",
                e.row, e.col
            )));
        }
        m.set(e.row, e.col, p)?;
    }
    Ok(m)
}

pub fn matrix_to_file<K: Field>(m: &PolyMatrix<K>, d: Option<&[i64]>) -> PolyMatrixFile {
    PolyMatrixFile {
        n: m.n(),
        r: m.n_vars(),
        field: m.field().spec(),
        entries: m
            .nonzero_positions()
            .map(|(row, col, p)| MatrixEntryFile {
                row,
                col,
                poly: p.render(m.field()),
            })
            .collect(),
        d: d.map(|v| v.to_vec()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 4x4 with square zero by cancellation: rows map onto the relations
    /// of two variables.
    pub(crate) fn koszul_q() -> PolyMatrix<Rationals> {
        let q = Rationals;
        let mut m = PolyMatrix::new(q, 4, 2).unwrap();
        m.set(1, 2, Poly::parse(&q, 2, "x1").unwrap()).unwrap();
        m.set(1, 3, Poly::parse(&q, 2, "x2").unwrap()).unwrap();
        m.set(2, 4, Poly::parse(&q, 2, "x2").unwrap()).unwrap();
        m.set(3, 4, Poly::parse(&q, 2, "-x1").unwrap()).unwrap();
        m
    }

    #[test]
    fn square_zero_detection() {
        let q = Rationals;
        assert!(koszul_q().is_square_zero().unwrap());

        let mut upper2 = PolyMatrix::new(q, 2, 1).unwrap();
        upper2.set(1, 2, Poly::parse(&q, 1, "x1").unwrap()).unwrap();
        assert!(upper2.is_square_zero().unwrap());

        let mut chain = PolyMatrix::new(q, 3, 1).unwrap();
        chain.set(1, 2, Poly::parse(&q, 1, "x1").unwrap()).unwrap();
        chain.set(2, 3, Poly::parse(&q, 1, "x1").unwrap()).unwrap();
        let (r, c, p) = chain.square_zero_witness().unwrap().unwrap();
        assert_eq!((r, c), (1, 3));
        assert_eq!(p, Poly::parse(&q, 1, "x1^2").unwrap());
    }

    #[test]
    fn minors_of_koszul() {
        let q = Rationals;
        let m = koszul_q();
        assert_eq!(
            m.minor(&[1, 2], &[2, 4]).unwrap(),
            Poly::parse(&q, 2, "x1*x2").unwrap()
        );
        assert!(m.minor(&[1, 2], &[2, 3]).unwrap().is_zero());
        assert!(m.minor(&[1, 2], &[2]).is_err());
        assert!(m.minor(&[1, 9], &[2, 4]).is_err());
    }

    #[test]
    fn minor_selects_upper_right_block() {
        // 8x8 with the nonzero region confined to rows 1..4, cols 5..8;
        // the full-block minor is the determinant of that 4x4 corner
        let q = Rationals;
        let mut m = PolyMatrix::new(q, 8, 4).unwrap();
        for i in 1..=4 {
            m.set(i, i + 4, Poly::variable(&q, 4, i).unwrap()).unwrap();
        }
        let minor = m.minor(&[1, 2, 3, 4], &[5, 6, 7, 8]).unwrap();
        assert_eq!(minor, Poly::parse(&q, 4, "x1*x2*x3*x4").unwrap());
        assert_eq!(m.symbolic_rank(), 4);
    }

    #[test]
    fn bareiss_matches_cofactor_on_5x5() {
        let q = Rationals;
        // dense 5x5 with integer entries; determinant checked against the
        // cofactor expansion of the same data
        let data = [
            [2, 1, 0, 3, 1],
            [1, 3, 2, 0, 4],
            [0, 2, 1, 1, 2],
            [3, 0, 1, 2, 1],
            [1, 4, 2, 1, 0],
        ];
        let mut m = PolyMatrix::new(q, 5, 1).unwrap();
        for (i, row) in data.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i + 1, j + 1, Poly::constant(&q, 1, q.from_i64(v)))
                    .unwrap();
            }
        }
        let via_bareiss = m.minor(&[1, 2, 3, 4, 5], &[1, 2, 3, 4, 5]).unwrap();
        let sub: Vec<Vec<Poly<Rationals>>> = (1..=5)
            .map(|r| (1..=5).map(|c| m.entry_or_zero(r, c)).collect())
            .collect();
        let via_cofactor = cofactor_det(&sub, &q).unwrap();
        assert_eq!(via_bareiss, via_cofactor);
    }

    #[test]
    fn symbolic_ranks() {
        let q = Rationals;
        assert_eq!(koszul_q().symbolic_rank(), 2);
        assert_eq!(PolyMatrix::new(q, 3, 2).unwrap().symbolic_rank(), 0);

        // [[a*f1, a*f2, a*f3], [b*f1, b*f2, b*f3]] padded to 3x3: rank 1
        let mut m = PolyMatrix::new(q, 3, 2).unwrap();
        let polys = ["x1", "x2", "x1+x2"];
        for (j, f) in polys.iter().enumerate() {
            let f = Poly::parse(&q, 2, f).unwrap();
            let alpha = Poly::parse(&q, 2, "2").unwrap();
            let beta = Poly::parse(&q, 2, "x1").unwrap();
            m.set(1, j + 1, alpha.mul(&f, &q).unwrap()).unwrap();
            m.set(2, j + 1, beta.mul(&f, &q).unwrap()).unwrap();
        }
        assert_eq!(m.symbolic_rank(), 1);
    }

    #[test]
    fn symbolic_rank_matches_minor_definition() {
        // oracle: the largest t admitting a nonzero t x t minor, by brute
        // force over all row/column selections
        fn minor_rank(m: &PolyMatrix<PrimeField>) -> usize {
            let n = m.n();
            let mut best = 0;
            for t in 1..=n {
                let mut row_sets = Vec::new();
                subsets(n, t, &mut Vec::new(), 1, &mut row_sets);
                'size: for rows in &row_sets {
                    for cols in &row_sets {
                        if !m.minor(rows, cols).unwrap().is_zero() {
                            best = t;
                            break 'size;
                        }
                    }
                }
            }
            best
        }
        fn subsets(
            n: usize,
            t: usize,
            current: &mut Vec<usize>,
            from: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if current.len() == t {
                out.push(current.clone());
                return;
            }
            for v in from..=n {
                current.push(v);
                subsets(n, t, current, v + 1, out);
                current.pop();
            }
        }

        use rand::{Rng, SeedableRng};
        let f101 = PrimeField::new(101).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut m = PolyMatrix::new(f101, 4, 2).unwrap();
            for i in 1..=4 {
                for j in 1..=4 {
                    if rng.gen_bool(0.4) {
                        let exps = vec![rng.gen_range(0..3), rng.gen_range(0..3)];
                        let coeff = rng.gen_range(0..101);
                        m.set(i, j, Poly::from_term(&f101, 2, exps, coeff)).unwrap();
                    }
                }
            }
            assert_eq!(m.symbolic_rank(), minor_rank(&m));
        }
    }

    #[test]
    fn rank_at_points() {
        let q = Rationals;
        let m = koszul_q();
        assert_eq!(m.rank_at_point(&[q.from_i64(1), q.from_i64(1)]).unwrap(), 2);
        assert_eq!(m.rank_at_point(&[q.from_i64(0), q.from_i64(0)]).unwrap(), 0);
        let f5 = PrimeField::new(5).unwrap();
        let mut m = PolyMatrix::new(f5, 2, 1).unwrap();
        m.set(1, 2, Poly::parse(&f5, 1, "x1").unwrap()).unwrap();
        assert_eq!(m.rank_at_point(&[0]).unwrap(), 0);
        assert_eq!(m.rank_at_point(&[3]).unwrap(), 1);
    }

    #[test]
    fn json_round_trip() {
        let m = koszul_q();
        let file = matrix_to_file(&m, Some(&[0, 0, 0, 0]));
        let text = serde_json::to_string(&file).unwrap();
        let loaded = load_matrix_json(&text).unwrap();
        assert_eq!(loaded.degree_tuple, Some(vec![0, 0, 0, 0]));
        match loaded.matrix {
            DynMatrix::Q(m2) => assert_eq!(m2, m),
            _ => panic!("expected rationals"),
        }
    }

    #[test]
    fn json_rejects_bad_field() {
        let text = r#"{"n":2,"r":1,"field":{"kind":"Fp","p":6},"entries":[]}"#;
        assert!(load_matrix_json(text).is_err());
        let text = r#"{"n":2,"r":1,"field":{"kind":"Fp","p":5},"entries":[
            {"row":1,"col":2,"poly":"x1"},{"row":1,"col":2,"poly":"x1"}]}"#;
        assert!(load_matrix_json(text).is_err());
    }
}
