//! Brute-force search for common projective roots over a prime field.
//!
//! Root existence over an algebraically closed field is only *certified*
//! when a finite-field witness is found; "none found over F_p" is an
//! explicitly inconclusive answer for the closed-field statement.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Homogeneity, Poly};

/// A point of P^{r-1}(F_p), normalized so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivePoint {
    coords: Vec<u64>,
}

impl ProjectivePoint {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Exhaustively scans all normalized points of P^{r-1}(F_p) and returns the
/// first common root of `polys`, or `None` when no root exists over F_p.
///
/// Points are visited with the leading 1 moving right: `(1:*:...:*)` first,
/// free coordinates counted up with the last coordinate fastest.
pub fn find_common_projective_root(
    field: &PrimeField,
    n_vars: usize,
    polys: &[Poly<PrimeField>],
) -> Result<Option<ProjectivePoint>> {
    if n_vars == 0 {
        return Err(Error::input(
            "projective search needs at least one variable",
        ));
    }
    if n_vars > 4 {
        return Err(Error::input(format!(
            "projective enumeration is guarded to r <= 4 variables, got {n_vars}"
        )));
    }
    if field.p() > 10_000 {
        return Err(Error::input(format!(
            "projective enumeration is guarded to p <= 10^4, got {}",
            field.p()
        )));
    }
    for f in polys {
        if f.n_vars() != n_vars {
            return Err(Error::input(format!(
                "polynomial has {} variables, expected {n_vars}",
                f.n_vars()
            )));
        }
        match f.homogeneity() {
            Homogeneity::Homogeneous(d) if d >= 1 => {}
            Homogeneity::Homogeneous(_) | Homogeneity::ZeroAnyDegree => {
                return Err(Error::input(
                    "projective root search requires nonconstant inputs",
                ));
            }
            Homogeneity::Inhomogeneous => {
                return Err(Error::input(
                    "projective root search requires homogeneous inputs",
                ));
            }
        }
    }

    let p = field.p();
    let mut coords = vec![0u64; n_vars];
    for lead in 0..n_vars {
        coords.iter_mut().for_each(|c| *c = 0);
        coords[lead] = 1;
        let free = n_vars - lead - 1;
        let mut counter = vec![0u64; free];
        loop {
            for (k, &v) in counter.iter().enumerate() {
                coords[lead + 1 + k] = v;
            }
            if polys
                .iter()
                .all(|f| f.eval(&coords, field).map(|v| v == 0).unwrap_or(false))
            {
                return Ok(Some(ProjectivePoint {
                    coords: coords.clone(),
                }));
            }
            // odometer with the last coordinate fastest
            let mut k = free;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                counter[k] += 1;
                if counter[k] < p {
                    break;
                }
                counter[k] = 0;
                if k == 0 {
                    break;
                }
            }
            if counter.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(None)
}
