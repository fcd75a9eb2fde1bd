//! Sparse exact multivariate polynomials.
//!
//! Terms are kept in a `BTreeMap` under the graded-lexicographic order (total
//! degree first, then exponent of `x1`, `x2`, ...), with no stored zero
//! coefficients. The zero polynomial has an empty term map.
//!
//! The string grammar (parser and printer round-trip stably):
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := coeff | coeff '*' powers | powers
//! powers := var('^'exp)? ('*' var('^'exp)?)*
//! var    := 'x' digit+          (1-based index)
//! coeff  := integer | "a/b"     (rationals only)
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector under graded-lex order.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Homogeneity status of a polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    ZeroAnyDegree,
    Homogeneous(u32),
    Inhomogeneous,
}

/// A sparse multivariate polynomial with coefficients in `K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<K: Field> {
    n_vars: usize,
    terms: BTreeMap<Monomial, K::Elem>,
}

impl<K: Field> Poly<K> {
    pub fn zero(n_vars: usize) -> Self {
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &K, n_vars: usize, value: K::Elem) -> Self {
        let mut p = Poly::zero(n_vars);
        if !field.is_zero(&value) {
            p.terms.insert(Monomial::constant(n_vars), value);
        }
        p
    }

    /// The variable `x{index}` (1-based).
    pub fn variable(field: &K, n_vars: usize, index: usize) -> Result<Self> {
        if index == 0 || index > n_vars {
            return Err(Error::input(format!(
                "variable index {index} out of range 1..={n_vars}"
            )));
        }
        let mut exps = vec![0u32; n_vars];
        exps[index - 1] = 1;
        Ok(Poly::from_term(field, n_vars, exps, field.one()))
    }

    pub fn from_term(field: &K, n_vars: usize, exps: Vec<u32>, coeff: K::Elem) -> Self {
        assert_eq!(exps.len(), n_vars);
        let mut p = Poly::zero(n_vars);
        if !field.is_zero(&coeff) {
            p.terms.insert(Monomial(exps), coeff);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under graded-lex, if nonzero.
    pub fn leading(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn constant_term(&self, field: &K) -> K::Elem {
        self.terms
            .get(&Monomial::constant(self.n_vars))
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::input(format!(
                "variable count mismatch: {} vs {}",
                self.n_vars, other.n_vars
            )));
        }
        Ok(())
    }

    fn insert_term(&mut self, field: &K, mono: Monomial, coeff: K::Elem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                if !field.is_zero(&coeff) {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = field.add(e.get(), &coeff);
                if field.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self, field: &K) -> Result<Self> {
        self.check_same_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(field, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self, field: &K) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = field.neg(c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self, field: &K) -> Result<Self> {
        self.add(&rhs.neg(field), field)
    }

    pub fn mul(&self, rhs: &Self, field: &K) -> Result<Self> {
        self.check_same_ring(rhs)?;
        let mut out = Poly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(field, ma.mul(mb), field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &K::Elem, field: &K) -> Self {
        let mut out = Poly::zero(self.n_vars);
        for (m, a) in &self.terms {
            let prod = field.mul(a, c);
            if !field.is_zero(&prod) {
                out.terms.insert(m.clone(), prod);
            }
        }
        out
    }

    pub fn eval(&self, point: &[K::Elem], field: &K) -> Result<K::Elem> {
        if point.len() != self.n_vars {
            return Err(Error::input(format!(
                "evaluation point has {} coordinates, expected {}",
                point.len(),
                self.n_vars
            )));
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = field.mul(&term, &point[i]);
                }
            }
            acc = field.add(&acc, &term);
        }
        Ok(acc)
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|m| m.total_degree());
        match degrees.next() {
            None => Homogeneity::ZeroAnyDegree,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self, field: &K) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (lead_m, lead_c) = divisor.leading().expect("nonzero divisor");
        let lead_m = lead_m.clone();
        let lead_c = lead_c.clone();
        let mut quotient = Poly::zero(self.n_vars);
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.leading() {
            if !lead_m.divides(rm) {
                return None;
            }
            let qm = rm.div(&lead_m);
            let qc = field.div(rc, &lead_c).ok()?;
            let term = Poly::from_term(field, self.n_vars, qm.0.clone(), qc.clone());
            quotient.insert_term(field, qm, qc);
            let prod = term.mul(divisor, field).ok()?;
            rem = rem.sub(&prod, field).ok()?;
        }
        Some(quotient)
    }

    /// Divides by the leading coefficient so the leading term is monic.
    pub fn monic(&self, field: &K) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = field.inv(c).expect("nonzero leading coefficient");
                self.mul_scalar(&inv, field)
            }
        }
    }

    pub fn render(&self, field: &K) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = field.signed_magnitude(c);
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push(if sign { '-' } else { '+' });
            }
            let coeff_str = field.format_elem(&mag);
            if m.is_constant() {
                out.push_str(&coeff_str);
            } else {
                if coeff_str != "1" {
                    out.push_str(&coeff_str);
                    out.push('*');
                }
                let mut first = true;
                for (v, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        out.push('*');
                    }
                    first = false;
                    out.push_str(&format!("x{}", v + 1));
                    if e > 1 {
                        out.push_str(&format!("^{e}"));
                    }
                }
            }
        }
        out
    }

    pub fn parse(field: &K, n_vars: usize, input: &str) -> Result<Self> {
        parse_poly(field, n_vars, input)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Number(String),
    Var(usize),
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                tokens.push(Token::Number(chars[start..i].iter().collect()));
            }
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(Error::input("variable 'x' must carry an index"));
                }
                let idx: usize = chars[start..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::input("bad variable index"))?;
                tokens.push(Token::Var(idx));
                i = j;
            }
            other => {
                return Err(Error::input(format!(
                    "unexpected character '{other}' in polynomial"
                )));
            }
        }
    }
    Ok(tokens)
}

fn parse_poly<K: Field>(field: &K, n_vars: usize, input: &str) -> Result<Poly<K>> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::input("empty polynomial string"));
    }
    let mut poly = Poly::zero(n_vars);
    let mut i = 0;
    let mut negative = false;
    // optional leading sign
    match tokens.first() {
        Some(Token::Minus) => {
            negative = true;
            i = 1;
        }
        Some(Token::Plus) => {
            i = 1;
        }
        _ => {}
    }
    loop {
        let (mono, coeff, next) = parse_term(field, n_vars, &tokens, i)?;
        let signed = if negative { field.neg(&coeff) } else { coeff };
        poly.insert_term(field, mono, signed);
        i = next;
        if i == tokens.len() {
            break;
        }
        match tokens[i] {
            Token::Plus => negative = false,
            Token::Minus => negative = true,
            _ => return Err(Error::input("expected '+' or '-' between terms")),
        }
        i += 1;
        if i == tokens.len() {
            return Err(Error::input("dangling sign at end of polynomial"));
        }
    }
    Ok(poly)
}

fn parse_term<K: Field>(
    field: &K,
    n_vars: usize,
    tokens: &[Token],
    mut i: usize,
) -> Result<(Monomial, K::Elem, usize)> {
    let mut coeff = field.one();
    let mut exps = vec![0u32; n_vars];

    if let Some(Token::Number(s)) = tokens.get(i) {
        coeff = field.parse_elem(s)?;
        i += 1;
        if tokens.get(i) == Some(&Token::Star) {
            i += 1;
        } else {
            return Ok((Monomial(exps), coeff, i));
        }
    }

    loop {
        match tokens.get(i) {
            Some(Token::Var(idx)) => {
                if *idx == 0 || *idx > n_vars {
                    return Err(Error::input(format!(
                        "variable x{idx} out of range 1..={n_vars}"
                    )));
                }
                let mut exp = 1u32;
                i += 1;
                if tokens.get(i) == Some(&Token::Caret) {
                    i += 1;
                    match tokens.get(i) {
                        Some(Token::Number(s)) => {
                            exp = s
                                .parse()
                                .map_err(|_| Error::input(format!("bad exponent '{s}'")))?;
                            i += 1;
                        }
                        _ => return Err(Error::input("expected exponent after '^'")),
                    }
                }
                exps[*idx - 1] += exp;
            }
            _ => return Err(Error::input("expected variable in term")),
        }
        if tokens.get(i) == Some(&Token::Star) {
            i += 1;
        } else {
            break;
        }
    }
    Ok((Monomial(exps), coeff, i))
}

fn largest_power_of_last_var<K: Field>(f: &Poly<K>) -> u32 {
    f.terms()
        .map(|(m, _)| *m.0.last().expect("bivariate"))
        .min()
        .unwrap_or(0)
}

/// Gcd of two homogeneous bivariate polynomials, monic-normalized.
///
/// Factors out the common power of `x2`, dehomogenizes at `x2 = 1`, runs the
/// univariate Euclidean algorithm, and re-homogenizes. `gcd(f, 0)` is the
/// monic normalization of `f`, and `gcd(0, 0) = 0`.
pub fn gcd_homogeneous_bivariate<K: Field>(f: &Poly<K>, g: &Poly<K>, field: &K) -> Result<Poly<K>> {
    if f.n_vars() != 2 || g.n_vars() != 2 {
        return Err(Error::unsupported(
            "general multivariate gcd out of scope; only bivariate homogeneous inputs",
        ));
    }
    for p in [f, g] {
        if p.homogeneity() == Homogeneity::Inhomogeneous {
            return Err(Error::unsupported(
                "general multivariate gcd out of scope; inputs must be homogeneous",
            ));
        }
    }
    if f.is_zero() {
        return Ok(g.monic(field));
    }
    if g.is_zero() {
        return Ok(f.monic(field));
    }
    let af = largest_power_of_last_var(f);
    let ag = largest_power_of_last_var(g);
    let shared = af.min(ag);

    let uni_f = dehomogenize(f, field);
    let uni_g = dehomogenize(g, field);
    let gcd_uni = uni_gcd(uni_f, uni_g, field);
    let deg = gcd_uni.len().saturating_sub(1);

    // re-homogenize: coefficient of x1^k becomes x1^k * x2^(deg-k)
    let mut out = Poly::zero(2);
    for (k, c) in gcd_uni.into_iter().enumerate() {
        if field.is_zero(&c) {
            continue;
        }
        out.insert_term(
            field,
            Monomial(vec![k as u32, (deg - k) as u32 + shared]),
            c,
        );
    }
    Ok(out.monic(field))
}

/// Coefficient list of f(x1, 1) indexed by degree in x1.
fn dehomogenize<K: Field>(f: &Poly<K>, field: &K) -> Vec<K::Elem> {
    let deg = f.terms().map(|(m, _)| m.0[0]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![field.zero(); deg + 1];
    for (m, c) in f.terms() {
        let k = m.0[0] as usize;
        coeffs[k] = field.add(&coeffs[k], c);
    }
    coeffs
}

fn uni_trim<K: Field>(mut v: Vec<K::Elem>, field: &K) -> Vec<K::Elem> {
    while let Some(last) = v.last() {
        if field.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
    v
}

fn uni_rem<K: Field>(mut a: Vec<K::Elem>, b: &[K::Elem], field: &K) -> Vec<K::Elem> {
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor").clone();
    while a.len() > db {
        let da = a.len() - 1;
        let factor = field
            .div(a.last().expect("trimmed"), &lead)
            .expect("nonzero leading coefficient");
        for (k, bc) in b.iter().enumerate() {
            let idx = da - db + k;
            let sub = field.mul(&factor, bc);
            a[idx] = field.sub(&a[idx], &sub);
        }
        a = uni_trim(a, field);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn uni_gcd<K: Field>(a: Vec<K::Elem>, b: Vec<K::Elem>, field: &K) -> Vec<K::Elem> {
    let mut a = uni_trim(a, field);
    let mut b = uni_trim(b, field);
    while !b.is_empty() {
        let r = uni_rem(a, &b, field);
        a = b;
        b = r;
    }
    // monic
    if let Some(lead) = a.last().cloned() {
        let inv = field.inv(&lead).expect("nonzero lead");
        for c in &mut a {
            *c = field.mul(c, &inv);
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qp(n_vars: usize, s: &str) -> Poly<Rationals> {
        Poly::parse(&Rationals, n_vars, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let q = Rationals;
        let a = qp(2, "x1+x2");
        let b = qp(2, "x1-x2");
        assert_eq!(a.mul(&b, &q).unwrap(), qp(2, "x1^2-x2^2"));
    }

    #[test]
    fn homogeneity_report() {
        assert_eq!(
            qp(2, "x1^2+x1*x2").homogeneity(),
            Homogeneity::Homogeneous(2)
        );
        assert_eq!(qp(2, "x1^2+x2").homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(
            Poly::<Rationals>::zero(2).homogeneity(),
            Homogeneity::ZeroAnyDegree
        );
    }

    #[test]
    fn eval_mod_p() {
        let f7 = PrimeField::new(7).unwrap();
        let p = Poly::parse(&f7, 2, "x1*x2+x2^2").unwrap();
        // 2*3 + 9 = 15 = 1 mod 7
        assert_eq!(p.eval(&[2, 3], &f7).unwrap(), 1);
    }

    #[test]
    fn render_parse_round_trip() {
        let q = Rationals;
        let samples = ["x1^2+2*x1*x2", "3/2*x1-x2^3", "0", "-x1+5", "7"];
        for s in samples {
            let p = qp(2, s);
            let rendered = p.render(&q);
            assert_eq!(qp(2, &rendered), p, "round trip through '{rendered}'");
        }
    }

    #[test]
    fn render_orders_terms_graded_lex() {
        assert_eq!(qp(2, "x2+x1^2+1").render(&Rationals), "x1^2+x2+1");
        assert_eq!(qp(3, "x2^2+x1*x3").render(&Rationals), "x1*x3+x2^2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Poly::parse(&Rationals, 2, "x3").is_err());
        assert!(Poly::parse(&Rationals, 2, "x1++x2").is_err());
        assert!(Poly::parse(&Rationals, 2, "").is_err());
        assert!(Poly::parse(&Rationals, 2, "x1+").is_err());
        assert!(Poly::parse(&Rationals, 2, "y1").is_err());
    }

    #[test]
    fn exact_division() {
        let q = Rationals;
        let product = qp(2, "x1^2-x2^2");
        let factor = qp(2, "x1+x2");
        let quotient = product.div_exact(&factor, &q).unwrap();
        assert_eq!(quotient, qp(2, "x1-x2"));
        assert!(qp(2, "x1^2+x2").div_exact(&factor, &q).is_none());
    }

    #[test]
    fn gcd_examples() {
        let q = Rationals;
        let g = gcd_homogeneous_bivariate(&qp(2, "x1^2-x2^2"), &qp(2, "x1^2+2*x1*x2+x2^2"), &q)
            .unwrap();
        assert_eq!(g, qp(2, "x1+x2"));

        let g = gcd_homogeneous_bivariate(&qp(2, "x1*x2"), &qp(2, "x2^2"), &q).unwrap();
        assert_eq!(g, qp(2, "x2"));

        let f = qp(2, "2*x1^2+2*x1*x2");
        let g = gcd_homogeneous_bivariate(&f, &Poly::zero(2), &q).unwrap();
        assert_eq!(g, qp(2, "x1^2+x1*x2"));

        let g = gcd_homogeneous_bivariate(&Poly::zero(2), &Poly::zero(2), &q).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn gcd_guards() {
        let q = Rationals;
        assert!(gcd_homogeneous_bivariate(&qp(2, "x1^2+x2"), &qp(2, "x1"), &q).is_err());
        let three_vars = Poly::parse(&q, 3, "x1").unwrap();
        assert!(gcd_homogeneous_bivariate(&three_vars, &three_vars, &q).is_err());
    }

    #[test]
    fn gcd_of_coprime_linear_forms_is_one() {
        let q = Rationals;
        let g = gcd_homogeneous_bivariate(&qp(2, "x1"), &qp(2, "x2"), &q).unwrap();
        assert_eq!(g, qp(2, "1"));
        let g = gcd_homogeneous_bivariate(&qp(2, "x1+x2"), &qp(2, "x1-x2"), &q).unwrap();
        assert_eq!(g, qp(2, "1"));
    }
}
