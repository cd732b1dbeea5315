//! Finite-dimensional ℤ₂-graded *-algebras over the Gaussian rationals with
//! anti-linear real structures, presented by exact structure constants.
//!
//! Elements are column coordinate vectors over a fixed basis. All maps are
//! exact; nothing here ever leaves ℚ(i).

use crate::error::Error;
use crate::mat::Mat;
use crate::scalar::GaussRat;
use crate::{Rat, Scalar, ScalarMat};
use num_traits::{One, Zero};
use std::fmt::Write as _;
use std::str::FromStr;

/// Sparse combination of basis elements.
pub type Combo = Vec<(usize, Scalar)>;

/// Anti-linear operator in basis coordinates: x ↦ C·conj(x) on columns.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiLinear {
    pub c: ScalarMat,
}

impl AntiLinear {
    pub fn identity(n: usize) -> AntiLinear {
        AntiLinear { c: Mat::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.c.rows()
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let conj: Vec<Scalar> = x.iter().map(|v| v.conj()).collect();
        self.c.apply_col(&conj)
    }

    /// The linear operator self∘self, i.e. C·conj(C).
    pub fn square_matrix(&self) -> ScalarMat {
        self.c.mul(&self.c.map(|v| v.conj()))
    }

    /// The linear operator self∘other, i.e. C₁·conj(C₂).
    pub fn compose_matrix(&self, other: &AntiLinear) -> ScalarMat {
        self.c.mul(&other.c.map(|v| v.conj()))
    }
}

/// A ℤ₂-graded *-algebra with an anti-linear involutive automorphism σ,
/// all in explicit basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasisAlgebra {
    /// degree[i] ∈ {0,1}
    pub degree: Vec<u8>,
    /// mul[i·dim + j] = coordinates of bᵢ·bⱼ
    mul: Vec<Combo>,
    pub star: AntiLinear,
    pub sigma: AntiLinear,
}

impl GradedBasisAlgebra {
    pub fn new(
        degree: Vec<u8>,
        mul: Vec<Combo>,
        star: AntiLinear,
        sigma: AntiLinear,
    ) -> GradedBasisAlgebra {
        let n = degree.len();
        assert_eq!(mul.len(), n * n, "mul table shape");
        assert_eq!(star.dim(), n);
        assert_eq!(sigma.dim(), n);
        assert!(degree.iter().all(|&d| d <= 1));
        assert!(mul.iter().flatten().all(|&(k, _)| k < n));
        GradedBasisAlgebra { degree, mul, star, sigma }
    }

    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Combo {
        &self.mul[i * self.dim() + j]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = out[*k].clone() + xi.clone() * yj.clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn apply_sigma(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.sigma.apply(x)
    }

    pub fn apply_star(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.star.apply(x)
    }

    /// The two-sided unit, when one exists.
    pub fn unit(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        // x·bⱼ = bⱼ and bⱼ·x = bⱼ, unknowns the n coordinates of x.
        let mut m: ScalarMat = Mat::zero(n, 2 * n * n);
        let mut b = vec![Scalar::zero(); 2 * n * n];
        for j in 0..n {
            for i in 0..n {
                for (k, c) in self.mul_basis(i, j) {
                    m[(i, j * n + k)] = m[(i, j * n + k)].clone() + c.clone();
                }
                for (k, c) in self.mul_basis(j, i) {
                    m[(i, n * n + j * n + k)] =
                        m[(i, n * n + j * n + k)].clone() + c.clone();
                }
            }
            b[j * n + j] = Scalar::one();
            b[n * n + j * n + j] = Scalar::one();
        }
        m.solve_row(&b)
    }

    /// Degree of a nonzero vector when homogeneous; None otherwise.
    pub fn degree_of(&self, x: &[Scalar]) -> Option<u8> {
        let mut seen: Option<u8> = None;
        for (i, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.degree[i]),
                Some(d) if d == self.degree[i] => {}
                _ => return None,
            }
        }
        seen
    }

    /// Structural sanity: associativity, additive grading, star axioms, unit.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let dij = (self.degree[i] + self.degree[j]) % 2;
                for (k, c) in self.mul_basis(i, j) {
                    if !c.is_zero() && self.degree[*k] != dij {
                        return Err(Error::InvalidGroupoid(format!(
                            "degree not additive on b{i}·b{j}"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..n {
                    let left = self.mul_vec(&ij, &self.basis_vec(k));
                    let jk = self.mul_vec(&self.basis_vec(j), &self.basis_vec(k));
                    let right = self.mul_vec(&self.basis_vec(i), &jk);
                    if left != right {
                        return Err(Error::InvalidGroupoid(format!(
                            "associativity fails on (b{i}, b{j}, b{k})"
                        )));
                    }
                }
            }
        }
        if self.unit().is_none() {
            return Err(Error::InvalidGroupoid("no two-sided unit".into()));
        }
        self.check_star().map_err(Error::InvalidGroupoid)?;
        Ok(())
    }

    fn check_star(&self) -> Result<(), String> {
        let n = self.dim();
        if !is_identity(&self.star.square_matrix()) {
            return Err("star is not an involution".into());
        }
        for i in 0..n {
            for k in 0..n {
                if !self.star.c[(k, i)].is_zero() && self.degree[k] != self.degree[i] {
                    return Err(format!("star does not preserve the degree of b{i}"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                let lhs = self.apply_star(&ij);
                let rhs = self.mul_vec(
                    &self.apply_star(&self.basis_vec(j)),
                    &self.apply_star(&self.basis_vec(i)),
                );
                if lhs != rhs {
                    return Err(format!("star is not anti-multiplicative on b{i}·b{j}"));
                }
            }
        }
        Ok(())
    }

    /// None when σ satisfies all axioms; otherwise which axiom broke.
    pub fn real_structure_witness(&self) -> Option<String> {
        let n = self.dim();
        if !is_identity(&self.sigma.square_matrix()) {
            return Some("sigma squared is not the identity".into());
        }
        for i in 0..n {
            for k in 0..n {
                if !self.sigma.c[(k, i)].is_zero() && self.degree[k] != self.degree[i] {
                    return Some(format!("sigma does not preserve the degree of b{i}"));
                }
            }
        }
        let images: Vec<Vec<Scalar>> =
            (0..n).map(|i| self.apply_sigma(&self.basis_vec(i))).collect();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                let lhs = self.apply_sigma(&ij);
                let rhs = self.mul_vec(&images[i], &images[j]);
                if lhs != rhs {
                    return Some(format!("sigma is not multiplicative on b{i}·b{j}"));
                }
            }
        }
        if self.sigma.compose_matrix(&self.star) != self.star.compose_matrix(&self.sigma) {
            return Some("sigma does not commute with star".into());
        }
        None
    }

    pub fn is_real_structure(&self) -> bool {
        self.real_structure_witness().is_none()
    }
}

fn is_identity(m: &ScalarMat) -> bool {
    *m == Mat::identity(m.rows())
}

fn int_scalar(n: i64) -> Scalar {
    GaussRat::from_int(n)
}

/// (−1)^{#\{(a,b) ∈ S×T : a > b\}}, the reordering sign for eₛ·eₜ.
fn reorder_sign(s: u32, t: u32) -> i64 {
    let mut count = 0;
    let mut tb = t;
    while tb != 0 {
        let b = tb.trailing_zeros();
        count += (s >> (b + 1)).count_ones();
        tb &= tb - 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The complex Clifford algebra on p+q anticommuting odd generators with
/// eᵢ² = −1 for the first p and +1 for the last q, graded by word length,
/// σ fixing every monomial, and star making each generator self- or
/// skew-adjoint according to its square.
pub fn make_clifford(p: usize, q: usize) -> Result<GradedBasisAlgebra, Error> {
    let n = p + q;
    if n > 6 {
        return Err(Error::SizeExceeded(format!(
            "{n} generators (limit 6): dimension 2^{n}"
        )));
    }
    let dim = 1usize << n;
    let pmask: u32 = (1u32 << p) - 1;
    let mut mul = Vec::with_capacity(dim * dim);
    for s in 0..dim as u32 {
        for t in 0..dim as u32 {
            let mut sign = reorder_sign(s, t);
            let common = s & t;
            if (common & pmask).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mul.push(vec![((s ^ t) as usize, int_scalar(sign))]);
        }
    }
    let degree: Vec<u8> = (0..dim as u32).map(|s| (s.count_ones() % 2) as u8).collect();
    let mut star: ScalarMat = Mat::zero(dim, dim);
    for s in 0..dim as u32 {
        let k = s.count_ones();
        let mut sign = if (k * k.wrapping_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
        if (s & pmask).count_ones() % 2 == 1 {
            sign = -sign;
        }
        star[(s as usize, s as usize)] = int_scalar(sign);
    }
    Ok(GradedBasisAlgebra::new(
        degree,
        mul,
        AntiLinear { c: star },
        AntiLinear::identity(dim),
    ))
}

/// Graded tensor product: basis pairs (i,j) ↦ i·dim(B)+j, multiplication with
/// the Koszul sign (−1)^{|b||a′|}, star with (−1)^{|a||b|}, σ = σ_A⊗σ_B.
pub fn graded_tensor(a: &GradedBasisAlgebra, b: &GradedBasisAlgebra) -> GradedBasisAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let degree: Vec<u8> = (0..dim).map(|x| (a.degree[x / db] + b.degree[x % db]) % 2).collect();
    let mut mul = Vec::with_capacity(dim * dim);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let neg = b.degree[j] == 1 && a.degree[k] == 1;
                    let mut combo = Vec::new();
                    for (r, c1) in a.mul_basis(i, k) {
                        for (s, c2) in b.mul_basis(j, l) {
                            let mut c = c1.clone() * c2.clone();
                            if neg {
                                c = -c;
                            }
                            combo.push((r * db + s, c));
                        }
                    }
                    mul.push(combo);
                }
            }
        }
    }
    let star = Mat::from_fn(dim, dim, |row, col| {
        let (r, s) = (row / db, row % db);
        let (i, j) = (col / db, col % db);
        let v = a.star.c[(r, i)].clone() * b.star.c[(s, j)].clone();
        if a.degree[i] == 1 && b.degree[j] == 1 {
            -v
        } else {
            v
        }
    });
    let sigma = Mat::from_fn(dim, dim, |row, col| {
        a.sigma.c[(row / db, col / db)].clone() * b.sigma.c[(row % db, col % db)].clone()
    });
    GradedBasisAlgebra::new(degree, mul, AntiLinear { c: star }, AntiLinear { c: sigma })
}

/// Conjugate algebra: same basis, degrees and maps, every scalar conjugated.
pub fn conjugate(a: &GradedBasisAlgebra) -> GradedBasisAlgebra {
    GradedBasisAlgebra {
        degree: a.degree.clone(),
        mul: a
            .mul
            .iter()
            .map(|combo| combo.iter().map(|(k, c)| (*k, c.conj())).collect())
            .collect(),
        star: AntiLinear { c: a.star.c.map(|v| v.conj()) },
        sigma: AntiLinear { c: a.sigma.c.map(|v| v.conj()) },
    }
}

fn write_rat(out: &mut String, r: &Rat) {
    if r.is_integer() {
        let _ = write!(out, "{}", r.numer());
    } else {
        let _ = write!(out, "{}/{}", r.numer(), r.denom());
    }
}

fn push_entries(out: &mut String, tag: &str, m: &ScalarMat) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = &m[(i, j)];
            if v.is_zero() {
                continue;
            }
            let _ = write!(out, "{tag} {i} {j} ");
            write_rat(out, &v.re);
            out.push(' ');
            write_rat(out, &v.im);
            out.push('\n');
        }
    }
}

/// Deterministic text form: degrees, then nonzero structure constants as
/// `mul i j k re im`, then star and sigma as sparse `tag i j re im` entries.
pub fn algebra_to_text(a: &GradedBasisAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {}", a.dim());
    let degs: Vec<String> = a.degree.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "deg {}", degs.join(" "));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.mul_basis(i, j) {
                if c.is_zero() {
                    continue;
                }
                let _ = write!(out, "mul {i} {j} {k} ");
                write_rat(&mut out, &c.re);
                out.push(' ');
                write_rat(&mut out, &c.im);
                out.push('\n');
            }
        }
    }
    push_entries(&mut out, "star", &a.star.c);
    push_entries(&mut out, "sigma", &a.sigma.c);
    out
}

fn parse_err(lineno: usize, msg: &str) -> Error {
    Error::Parse(format!("line {lineno}: {msg}"))
}

fn parse_rat(s: &str, lineno: usize) -> Result<Rat, Error> {
    Rat::from_str(s).map_err(|_| parse_err(lineno, &format!("bad rational `{s}`")))
}

pub fn algebra_from_text(text: &str) -> Result<GradedBasisAlgebra, Error> {
    let mut dim: Option<usize> = None;
    let mut degree: Vec<u8> = Vec::new();
    let mut mul: Vec<Combo> = Vec::new();
    let mut star: Option<ScalarMat> = None;
    let mut sigma: Option<ScalarMat> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let tag = it.next().unwrap();
        let rest: Vec<&str> = it.collect();
        match tag {
            "dim" => {
                let n: usize = rest
                    .first()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "dim wants a count"))?;
                dim = Some(n);
                mul = vec![Vec::new(); n * n];
                star = Some(Mat::zero(n, n));
                sigma = Some(Mat::zero(n, n));
            }
            "deg" => {
                let n = dim.ok_or_else(|| parse_err(lineno, "deg before dim"))?;
                degree = rest
                    .iter()
                    .map(|s| s.parse::<u8>().ok().filter(|&d| d <= 1))
                    .collect::<Option<Vec<u8>>>()
                    .ok_or_else(|| parse_err(lineno, "degrees must be 0 or 1"))?;
                if degree.len() != n {
                    return Err(parse_err(lineno, "degree count differs from dim"));
                }
            }
            "mul" => {
                let n = dim.ok_or_else(|| parse_err(lineno, "mul before dim"))?;
                if rest.len() != 5 {
                    return Err(parse_err(lineno, "mul wants i j k re im"));
                }
                let parse_ix = |s: &str| -> Result<usize, Error> {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v < n)
                        .ok_or_else(|| parse_err(lineno, &format!("bad index `{s}`")))
                };
                let (i, j, k) = (parse_ix(rest[0])?, parse_ix(rest[1])?, parse_ix(rest[2])?);
                let re = parse_rat(rest[3], lineno)?;
                let im = parse_rat(rest[4], lineno)?;
                mul[i * n + j].push((k, GaussRat::new(re, im)));
            }
            "star" | "sigma" => {
                let n = dim.ok_or_else(|| parse_err(lineno, "matrix entry before dim"))?;
                if rest.len() != 4 {
                    return Err(parse_err(lineno, "matrix entry wants i j re im"));
                }
                let parse_ix = |s: &str| -> Result<usize, Error> {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v < n)
                        .ok_or_else(|| parse_err(lineno, &format!("bad index `{s}`")))
                };
                let (i, j) = (parse_ix(rest[0])?, parse_ix(rest[1])?);
                let re = parse_rat(rest[2], lineno)?;
                let im = parse_rat(rest[3], lineno)?;
                let m = if tag == "star" { star.as_mut() } else { sigma.as_mut() };
                m.unwrap()[(i, j)] = GaussRat::new(re, im);
            }
            other => return Err(parse_err(lineno, &format!("unknown tag `{other}`"))),
        }
    }
    let n = dim.ok_or_else(|| Error::Parse("missing dim line".into()))?;
    if degree.len() != n {
        return Err(Error::Parse("missing deg line".into()));
    }
    Ok(GradedBasisAlgebra::new(
        degree,
        mul,
        AntiLinear { c: star.unwrap() },
        AntiLinear { c: sigma.unwrap() },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn clifford_shapes_and_relations() {
        let a = make_clifford(1, 1).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.degree, vec![0, 1, 1, 0]);
        // e1² = −1, e2² = +1, e1e2 = −e2e1
        assert_eq!(a.mul_basis(1, 1), &vec![(0, int_scalar(-1))]);
        assert_eq!(a.mul_basis(2, 2), &vec![(0, int_scalar(1))]);
        let e12 = a.mul_vec(&a.basis_vec(1), &a.basis_vec(2));
        let e21 = a.mul_vec(&a.basis_vec(2), &a.basis_vec(1));
        let neg: Vec<Scalar> = e21.iter().map(|v| -v.clone()).collect();
        assert_eq!(e12, neg);
        assert!(make_clifford(4, 3).is_err());
    }

    #[test]
    fn clifford_models_validate() {
        for (p, q) in [(0, 0), (0, 1), (1, 0), (2, 0), (0, 2), (1, 2)] {
            let a = make_clifford(p, q).unwrap();
            a.validate().unwrap();
            assert!(a.is_real_structure(), "sigma axioms for ({p},{q})");
            let unit = a.unit().unwrap();
            assert_eq!(unit, a.basis_vec(0));
        }
    }

    #[test]
    fn star_conventions_on_generators() {
        let a = make_clifford(1, 1).unwrap();
        // skew generator (square −1) and self-adjoint generator (square +1)
        assert_eq!(a.apply_star(&a.basis_vec(1)), {
            let mut v = vec![Scalar::zero(); 4];
            v[1] = int_scalar(-1);
            v
        });
        assert_eq!(a.apply_star(&a.basis_vec(2)), a.basis_vec(2));
    }

    #[test]
    fn tensor_unit_and_anticommutation() {
        let c01 = make_clifford(0, 1).unwrap();
        let unit = make_clifford(0, 0).unwrap();
        assert_eq!(graded_tensor(&c01, &unit), c01);

        let t = graded_tensor(&c01, &c01);
        assert_eq!(t.dim(), 4);
        t.validate().unwrap();
        assert!(t.is_real_structure());
        // u = e⊗1 (index 2), v = 1⊗e (index 1): uv = −vu
        let uv = t.mul_vec(&t.basis_vec(2), &t.basis_vec(1));
        let vu = t.mul_vec(&t.basis_vec(1), &t.basis_vec(2));
        let neg: Vec<Scalar> = vu.iter().map(|v| -v.clone()).collect();
        assert_eq!(uv, neg);
    }

    #[test]
    fn tensor_is_associative_on_the_nose() {
        let a = make_clifford(1, 0).unwrap();
        let b = make_clifford(0, 1).unwrap();
        let c = make_clifford(1, 1).unwrap();
        let left = graded_tensor(&graded_tensor(&a, &b), &c);
        let right = graded_tensor(&a, &graded_tensor(&b, &c));
        assert_eq!(left, right);
        left.validate().unwrap();
    }

    #[test]
    fn conjugate_is_an_involution() {
        let a = graded_tensor(&make_clifford(0, 1).unwrap(), &make_clifford(1, 0).unwrap());
        let cc = conjugate(&conjugate(&a));
        assert_eq!(cc, a);
        conjugate(&a).validate().unwrap();
        assert!(conjugate(&a).is_real_structure());
    }

    #[test]
    fn broken_sigma_is_rejected_with_witness() {
        let mut a = make_clifford(0, 2).unwrap();
        // scale sigma by i on the odd part: multiplicativity breaks on odd·odd
        for col in 0..a.dim() {
            if a.degree[col] == 1 {
                for row in 0..a.dim() {
                    let v = a.sigma.c[(row, col)].clone();
                    a.sigma.c[(row, col)] = v * Scalar::i();
                }
            }
        }
        assert!(!a.is_real_structure());
        let w = a.real_structure_witness().unwrap();
        assert!(w.contains("multiplicative"), "witness: {w}");
    }

    #[test]
    fn text_roundtrip_is_exact() {
        let samples = vec![
            make_clifford(2, 1).unwrap(),
            graded_tensor(&make_clifford(0, 1).unwrap(), &make_clifford(0, 1).unwrap()),
        ];
        for a in samples {
            let text = algebra_to_text(&a);
            let back = algebra_from_text(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(algebra_to_text(&back), text);
        }
        assert!(algebra_from_text("deg 0 0\n").is_err());
        let bad = algebra_from_text("dim 2\ndeg 0 1\nmul 0 0 5 1 0\n");
        match bad {
            Err(Error::Parse(msg)) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn homogeneous_degree_probe() {
        let a = make_clifford(0, 2).unwrap();
        assert_eq!(a.degree_of(&a.basis_vec(1)), Some(1));
        let mut mixed = a.basis_vec(0);
        mixed[1] = one();
        assert_eq!(a.degree_of(&mixed), None);
        assert_eq!(a.degree_of(&vec![Scalar::zero(); 4]), None);
    }
}
