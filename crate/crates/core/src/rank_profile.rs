//! Rank profiles of scalar square-zero matrices and the orbit representative.
//!
//! The profile `rho(i, j)` is the rank of the southwest corner submatrix
//! (rows `i..N`, columns `1..j`). It is constant on conjugation orbits of the
//! invertible upper triangular group, and a double difference of the table
//! recovers the unique partial permutation matrix in the orbit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::involution::PartialPermutationMatrix;
use crate::polymatrix::{scalar_rank, PolyMatrix};

/// A dense square matrix over F_p with entries stored as canonical residues.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModMatrix {
    field: PrimeField,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl ModMatrix {
    pub fn new(field: PrimeField, rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("matrix must be square and nonempty"));
        }
        let p = field.p();
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % p).collect())
            .collect();
        Ok(ModMatrix { field, n, rows })
    }

    pub fn from_partial_permutation(field: PrimeField, m: &PartialPermutationMatrix) -> Self {
        let mut rows = vec![vec![0u64; m.n]; m.n];
        for &(r, c) in &m.ones {
            rows[r - 1][c - 1] = 1;
        }
        ModMatrix {
            field,
            n: m.n,
            rows,
        }
    }

    /// Reads a polynomial matrix whose entries are all constants.
    pub fn from_constant_poly_matrix(m: &PolyMatrix<PrimeField>) -> Result<Self> {
        let field = *m.field();
        let mut rows = vec![vec![0u64; m.n()]; m.n()];
        for (r, c, p) in m.nonzero_positions() {
            if !p.is_constant() {
                return Err(Error::input(format!(
                    "entry ({r},{c}) is not a scalar: {}",
                    p.render(&field)
                )));
            }
            rows[r - 1][c - 1] = p.constant_term(&field);
        }
        Ok(ModMatrix {
            field,
            n: m.n(),
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.rows[row - 1][col - 1]
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.rows[i][j] == 0))
    }

    pub fn is_square_zero(&self) -> bool {
        let p = self.field.p();
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = 0u64;
                for k in 0..self.n {
                    acc = (acc + self.rows[i][k] * self.rows[k][j]) % p;
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, rhs: &ModMatrix) -> Result<ModMatrix> {
        if self.n != rhs.n || self.field != rhs.field {
            return Err(Error::input("matrix product shape or field mismatch"));
        }
        let p = self.field.p();
        let mut rows = vec![vec![0u64; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = 0u64;
                for k in 0..self.n {
                    acc = (acc + self.rows[i][k] * rhs.rows[k][j]) % p;
                }
                rows[i][j] = acc;
            }
        }
        ModMatrix::new(self.field, rows)
    }

    fn validate_profile_input(&self) -> Result<()> {
        if !self.is_strictly_upper_triangular() {
            return Err(Error::input("matrix is not strictly upper triangular"));
        }
        if !self.is_square_zero() {
            return Err(Error::input("matrix does not square to zero"));
        }
        Ok(())
    }

    /// Exact ranks of all southwest corner submatrices.
    pub fn rank_profile(&self) -> Result<RankProfile> {
        self.validate_profile_input()?;
        let n = self.n;
        let mut table = vec![0usize; (n + 1) * (n + 1)];
        for i in 1..=n {
            for j in 1..=n {
                let sub: Vec<Vec<u64>> = (i..=n).map(|r| self.rows[r - 1][..j].to_vec()).collect();
                table[(i - 1) * (n + 1) + j] = scalar_rank(&self.field, sub);
            }
        }
        let profile = RankProfile { n, table };
        profile.check_monotone()?;
        Ok(profile)
    }

    /// The unique partial permutation matrix in the conjugation orbit.
    pub fn orbit_representative(&self) -> Result<PartialPermutationMatrix> {
        let profile = self.rank_profile()?;
        let mut ones = BTreeSet::new();
        let n = self.n;
        for i in 1..=n {
            for j in 1..=n {
                let value = profile.rho(i, j) as i64
                    - profile.rho(i + 1, j) as i64
                    - profile.rho(i, j - 1) as i64
                    + profile.rho(i + 1, j - 1) as i64;
                match value {
                    0 => {}
                    1 => {
                        ones.insert((i, j));
                    }
                    other => {
                        return Err(Error::invariant(format!(
                            "rank profile double difference at ({i},{j}) is {other}, \
                             outside {{0,1}}: input is not in a valid orbit"
                        )));
                    }
                }
            }
        }
        PartialPermutationMatrix::new(n, ones)
            .map_err(|e| Error::invariant(format!("orbit representative malformed: {e}")))
    }
}

/// The `(N+1) x (N+1)` table `rho(i, j)` for `1 <= i <= N+1`, `0 <= j <= N`,
/// zero on empty ranges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankProfile {
    n: usize,
    table: Vec<usize>,
}

impl RankProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of rows `i..N`, columns `1..j`.
    pub fn rho(&self, i: usize, j: usize) -> usize {
        assert!(
            i >= 1 && i <= self.n + 1 && j <= self.n,
            "rho({i},{j}) out of range"
        );
        if i == self.n + 1 || j == 0 {
            return 0;
        }
        self.table[(i - 1) * (self.n + 1) + j]
    }

    /// Pointwise `self <= other`.
    pub fn dominated_by(&self, other: &RankProfile) -> bool {
        self.n == other.n
            && (1..=self.n).all(|i| (1..=self.n).all(|j| self.rho(i, j) <= other.rho(i, j)))
    }

    fn check_monotone(&self) -> Result<()> {
        for i in 1..=self.n {
            for j in 1..=self.n {
                let v = self.rho(i, j);
                if v > self.n - i + 1 || v > j {
                    return Err(Error::invariant(format!(
                        "rho({i},{j}) = {v} exceeds bounds"
                    )));
                }
                if v < self.rho(i + 1, j) || v < self.rho(i, j - 1) {
                    return Err(Error::invariant(format!(
                        "rank profile not monotone at ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }
}
