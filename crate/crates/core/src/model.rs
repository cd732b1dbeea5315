//! Canonical matrix forms of elementary graded algebras.
//!
//! An algebra qualifies when its basis multiplies monomially (every product
//! of basis elements is a fourth-root-of-unity multiple of a basis element),
//! which makes it a twisted group algebra of an elementary abelian 2-group.
//! The commutation form on that group decides the shape: trivial radical
//! gives one matrix block with an inner grading, a two-element radical gives
//! the two-block model with the swap grading. The real structure is
//! transported onto the block(s) as an explicit conjugation operator.

use crate::algebra::{AntiLinear, GradedBasisAlgebra};
use crate::error::Error;
use crate::mat::Mat;
use crate::scalar::GaussRat;
use crate::{Rat, Scalar, ScalarMat};
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The algebra in block form: all N×N matrices (even parity, with a diagonal
/// ±1 grading operator), or two N×N blocks swapped by the grading (odd
/// parity, with the + block represented and the − block reached through the
/// grading automorphism).
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub parity: Parity,
    /// Block size N.
    pub n: usize,
    /// Even parity only: the diagonal ±1 grading unitary.
    pub grading: Option<ScalarMat>,
    /// Odd parity only: true when σ swaps the two blocks.
    pub swap_form: Option<bool>,
    /// Anti-linear x ↦ C·conj(x) on ℂ^N implementing σ on the block
    /// (for odd parity: the block component σ₀ of σ).
    pub j: AntiLinear,
    /// ρ(bᵢ) per basis element of the source algebra.
    pub rho: Vec<ScalarMat>,
}

impl MatrixModel {
    /// The real scalar c with J² = c·Id; its sign is basis-independent.
    pub fn j_square_scalar(&self) -> Result<Rat, Error> {
        let sq = self.j.square_matrix();
        let c = sq[(0, 0)].clone();
        let scaled: ScalarMat = Mat::identity(self.n).scale(&c);
        if sq != scaled || !c.is_real() || c.is_zero() {
            return Err(Error::NonScalarSquare(format!(
                "J∘J is not a nonzero real scalar (top-left entry {c})"
            )));
        }
        Ok(c.re)
    }

    /// Even parity: 0 when S J S = J, 1 when S J S = −J.
    pub fn grading_sign_of_j(&self) -> Result<u8, Error> {
        let s = self
            .grading
            .as_ref()
            .ok_or_else(|| Error::Unsupported("grading sign needs even parity".into()))?;
        // S has real entries, so conjugating the anti-linear J by S acts on
        // its matrix part as u ↦ S·u·S.
        let sus = s.mul(&self.j.c).mul(s);
        if sus == self.j.c {
            Ok(0)
        } else if sus == self.j.c.neg() {
            Ok(1)
        } else {
            Err(Error::NonScalarSquare("J is not homogeneous for the grading".into()))
        }
    }
}

fn not_elementary(msg: impl Into<String>) -> Error {
    Error::NotElementary(msg.into())
}

/// Monomial skeleton: indices form a group with unit `unit`, products carry
/// unit coefficients, squares land on the unit.
struct Skeleton {
    unit: usize,
    prod: Vec<usize>,
    coef: Vec<Scalar>,
    /// anticommutation form: true when bᵢbⱼ = −bⱼbᵢ
    beta: Vec<bool>,
}

impl Skeleton {
    fn prod(&self, i: usize, j: usize, n: usize) -> usize {
        self.prod[i * n + j]
    }

    fn beta(&self, i: usize, j: usize, n: usize) -> bool {
        self.beta[i * n + j]
    }
}

fn unit_scalar_ok(c: &Scalar) -> bool {
    let one = Scalar::one();
    let i = Scalar::i();
    *c == one || *c == -one.clone() || *c == i || *c == -i.clone()
}

fn build_skeleton(a: &GradedBasisAlgebra) -> Result<Skeleton, Error> {
    let n = a.dim();
    if !n.is_power_of_two() {
        return Err(not_elementary(format!("dimension {n} is not a power of two")));
    }
    // the unit must itself be a basis monomial; scan for it directly rather
    // than solving the general unit system, which is quadratic in storage
    let acts_as_unit = |i: usize| {
        (0..n).all(|j| {
            let l = a.mul_basis(i, j);
            let r = a.mul_basis(j, i);
            l.len() == 1
                && l[0].0 == j
                && l[0].1.is_one()
                && r.len() == 1
                && r[0].0 == j
                && r[0].1.is_one()
        })
    };
    let unit = (0..n)
        .find(|&i| acts_as_unit(i))
        .ok_or_else(|| not_elementary("unit is not a basis monomial"))?;
    let mut prod = vec![0usize; n * n];
    let mut coef = vec![Scalar::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let combo = a.mul_basis(i, j);
            if combo.len() != 1 || combo[0].1.is_zero() {
                return Err(not_elementary(format!("b{i}·b{j} is not monomial")));
            }
            let (k, c) = (combo[0].0, combo[0].1.clone());
            if !unit_scalar_ok(&c) {
                return Err(not_elementary(format!(
                    "b{i}·b{j} carries non-unit coefficient {c}"
                )));
            }
            prod[i * n + j] = k;
            coef[i * n + j] = c;
        }
    }
    for i in 0..n {
        if prod[i * n + i] != unit {
            return Err(not_elementary(format!("b{i}² is not a multiple of the unit")));
        }
        if (a.degree[i] + a.degree[i]) % 2 != a.degree[unit] {
            return Err(not_elementary("degrees not additive".to_string()));
        }
    }
    let mut beta = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if prod[i * n + j] != prod[j * n + i] {
                return Err(not_elementary("index product is not commutative"));
            }
            let ratio = coef[i * n + j].clone() / coef[j * n + i].clone();
            if ratio.is_one() {
                beta[i * n + j] = false;
            } else if ratio == -Scalar::one() {
                beta[i * n + j] = true;
            } else {
                return Err(not_elementary(format!(
                    "b{i}, b{j} commute up to {ratio}, not ±1"
                )));
            }
        }
    }
    Ok(Skeleton { unit, prod, coef, beta })
}

/// Normalized commuting involution μ·b_h for a basis monomial with b_h² = ±1.
fn normalized_involution(sk: &Skeleton, a: &GradedBasisAlgebra, h: usize) -> Result<Vec<Scalar>, Error> {
    let n = a.dim();
    let lambda = sk.coef[h * n + h].clone();
    let mu = if lambda.is_one() {
        Scalar::one()
    } else if lambda == -Scalar::one() {
        Scalar::i()
    } else {
        return Err(not_elementary(format!("b{h}² = {lambda}, cannot normalize")));
    };
    let mut v = vec![Scalar::zero(); n];
    v[h] = mu;
    Ok(v)
}

/// Greedy maximal isotropic subgroup containing `seed`, as a list of indices
/// plus the generators that were adjoined.
fn isotropic_subgroup(sk: &Skeleton, n: usize, seed: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut members = vec![sk.unit];
    for &s in seed {
        if !members.contains(&s) {
            let cur = members.clone();
            for m in cur {
                members.push(sk.prod(s, m, n));
            }
        }
    }
    let mut gens = Vec::new();
    loop {
        let mut extended = false;
        for g in 0..n {
            if members.contains(&g) {
                continue;
            }
            if members.iter().all(|&m| !sk.beta(g, m, n)) && !sk.beta(g, g, n) {
                gens.push(g);
                let cur = members.clone();
                for m in cur {
                    members.push(sk.prod(g, m, n));
                }
                extended = true;
                break;
            }
        }
        if !extended {
            return (members, gens);
        }
    }
}

fn half() -> Scalar {
    GaussRat::from_rat_strs("1/2", "0").unwrap()
}

/// Row-space basis in reduced echelon form, with pivot columns.
fn row_space_basis(rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m: ScalarMat = Mat::from_rows(rows);
    let pivots = m.rref();
    let basis = (0..pivots.len()).map(|i| m.row_vec(i)).collect();
    (basis, pivots)
}

/// Coordinates of `v` in an echelon-form basis; the basis must span it.
fn express(basis: &[Vec<Scalar>], pivots: &[usize], v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
    let coords: Vec<Scalar> = pivots.iter().map(|&p| v[p].clone()).collect();
    let mut check = vec![Scalar::zero(); v.len()];
    for (c, row) in coords.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (k, entry) in row.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            check[k] = check[k].clone() + c.clone() * entry.clone();
        }
    }
    if check != v {
        return Err(not_elementary("module is not invariant"));
    }
    Ok(coords)
}

fn flatten(m: &ScalarMat) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(m[(i, j)].clone());
        }
    }
    out
}

/// Skolem–Noether: given spanning matrices mats[g] of M_N and their images
/// under a multiplicative linear automorphism χ, produce u with χ = Ad_u.
fn inner_implementer(
    mats: &[ScalarMat],
    images: &[ScalarMat],
    n: usize,
) -> Result<ScalarMat, Error> {
    // pick an independent spanning subset once, invert once, then every χ
    // evaluation is a single row multiplication
    let nn = n * n;
    let mut echelon: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut sel = Vec::new();
    for (g, m) in mats.iter().enumerate() {
        if sel.len() == nn {
            break;
        }
        let mut row = flatten(m);
        for (p, e) in &echelon {
            let c = row[*p].clone();
            if !c.is_zero() {
                for (k, v) in e.iter().enumerate() {
                    if !v.is_zero() {
                        row[k] = row[k].clone() - c.clone() * v.clone();
                    }
                }
            }
        }
        if let Some(p) = row.iter().position(|v| !v.is_zero()) {
            let lead = row[p].clone();
            for v in &mut row {
                if !v.is_zero() {
                    *v = v.clone() / lead.clone();
                }
            }
            echelon.push((p, row));
            sel.push(g);
        }
    }
    if sel.len() != nn {
        return Err(not_elementary("matrices do not span the block"));
    }
    let span: ScalarMat = Mat::from_rows(sel.iter().map(|&g| flatten(&mats[g])).collect());
    let span_inv = span
        .inverse()
        .ok_or_else(|| not_elementary("matrices do not span the block"))?;
    let chi = |target: &ScalarMat| -> Result<ScalarMat, Error> {
        let x = span_inv.apply_row(&flatten(target));
        let mut out: ScalarMat = Mat::zero(n, n);
        for (k, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&images[sel[k]].scale(c));
            }
        }
        Ok(out)
    };
    // u·e_j := χ(E_{j1})·v₁ where v₁ is any vector with χ(E₁₁)·v₁ ≠ 0.
    let e11 = Mat::from_fn(n, n, |i, j| {
        if i == 0 && j == 0 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let p = chi(&e11)?;
    let mut v1 = None;
    for k in 0..n {
        let col: Vec<Scalar> = (0..n).map(|i| p[(i, k)].clone()).collect();
        if col.iter().any(|v| !v.is_zero()) {
            v1 = Some(col);
            break;
        }
    }
    let v1 = v1.ok_or_else(|| not_elementary("rank-one image vanished"))?;
    let mut u: ScalarMat = Mat::zero(n, n);
    for j in 0..n {
        let ej1 = Mat::from_fn(n, n, |r, c| {
            if r == j && c == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let col = chi(&ej1)?.apply_col(&v1);
        for i in 0..n {
            u[(i, j)] = col[i].clone();
        }
    }
    if u.inverse().is_none() {
        return Err(not_elementary("transport operator is singular"));
    }
    Ok(u)
}

pub fn matrix_model(a: &GradedBasisAlgebra) -> Result<MatrixModel, Error> {
    let n = a.dim();
    let sk = build_skeleton(a)?;
    let radical: Vec<usize> =
        (0..n).filter(|&g| (0..n).all(|h| !sk.beta(g, h, n))).collect();
    match radical.len() {
        1 => even_model(a, &sk),
        2 => odd_model(a, &sk, radical[1 - radical.iter().position(|&g| g == sk.unit).unwrap()]),
        k => Err(not_elementary(format!("central monomial subgroup has order {k}"))),
    }
}

/// Idempotent cutting a single column: product of (1 + c_h)/2 over the
/// isotropic generators, times an optional prefactor.
fn column_idempotent(
    a: &GradedBasisAlgebra,
    sk: &Skeleton,
    gens: &[usize],
    prefactor: Option<Vec<Scalar>>,
) -> Result<Vec<Scalar>, Error> {
    let n = a.dim();
    let mut e = vec![Scalar::zero(); n];
    e[sk.unit] = Scalar::one();
    if let Some(p) = prefactor {
        e = p;
    }
    for &h in gens {
        let ch = normalized_involution(sk, a, h)?;
        let mut factor = ch;
        factor[sk.unit] = factor[sk.unit].clone() + Scalar::one();
        factor = factor.iter().map(|v| v.clone() * half()).collect();
        e = a.mul_vec(&e, &factor);
    }
    Ok(e)
}

/// Left-multiplication representation on the column space A·E.
fn represent(
    a: &GradedBasisAlgebra,
    e: &[Scalar],
) -> Result<(Vec<ScalarMat>, usize), Error> {
    let n = a.dim();
    let cols: Vec<Vec<Scalar>> = (0..n).map(|i| a.mul_vec(&a.basis_vec(i), e)).collect();
    let (basis, pivots) = row_space_basis(cols);
    let nd = basis.len();
    let mut rho = Vec::with_capacity(n);
    for g in 0..n {
        let mut m: ScalarMat = Mat::zero(nd, nd);
        for (t, row) in basis.iter().enumerate() {
            let moved = a.mul_vec(&a.basis_vec(g), row);
            let coords = express(&basis, &pivots, &moved)?;
            for k in 0..nd {
                m[(k, t)] = coords[k].clone();
            }
        }
        rho.push(m);
    }
    // the images must span the full block
    let span: ScalarMat = Mat::from_rows(rho.iter().map(flatten).collect());
    if span.rank() != nd * nd {
        return Err(not_elementary("representation does not fill the block"));
    }
    Ok((rho, nd))
}

/// Transport σ onto the block. `targets[g]` must equal the image of ρ(b_g)
/// under the anti-linear map being implemented.
fn transport_sigma(
    rho: &[ScalarMat],
    targets: &[ScalarMat],
    nd: usize,
) -> Result<AntiLinear, Error> {
    let conj_mats: Vec<ScalarMat> = rho.iter().map(|m| m.map(|v| v.conj())).collect();
    let u = inner_implementer(&conj_mats, targets, nd)?;
    for (cm, t) in conj_mats.iter().zip(targets) {
        if u.mul(cm) != t.mul(&u) {
            return Err(Error::NotRealStructure(
                "transported operator does not implement the real structure".into(),
            ));
        }
    }
    Ok(AntiLinear { c: u })
}

fn rho_of_vec(rho: &[ScalarMat], x: &[Scalar], nd: usize) -> ScalarMat {
    let mut out: ScalarMat = Mat::zero(nd, nd);
    for (g, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&rho[g].scale(c));
        }
    }
    out
}

fn even_model(a: &GradedBasisAlgebra, sk: &Skeleton) -> Result<MatrixModel, Error> {
    let n = a.dim();
    // grading element: b_s conjugation realizes the degree character
    let s_index = (0..n)
        .find(|&s| (0..n).all(|h| (sk.beta(s, h, n) as u8) == a.degree[h] % 2))
        .ok_or_else(|| not_elementary("grading character is not inner"))?;
    let (_, gens) = isotropic_subgroup(sk, n, &[]);
    let e = column_idempotent(a, sk, &gens, None)?;
    let (rho, nd) = represent(a, &e)?;
    if nd * nd != n {
        return Err(not_elementary(format!("block size {nd} does not square to {n}")));
    }
    // normalize the grading operator to an involution and diagonalize it
    let s_norm = normalized_involution(sk, a, s_index)?;
    let s_mat = rho_of_vec(&rho, &s_norm, nd);
    if s_mat.mul(&s_mat) != Mat::identity(nd) {
        return Err(not_elementary("grading operator does not square to one"));
    }
    let mut plus_rows = Vec::new();
    let mut minus_rows = Vec::new();
    for t in 0..nd {
        // columns of (1 ± S)/2, gathered as rows for rank reduction
        let col_p: Vec<Scalar> = (0..nd)
            .map(|i| {
                let v = if i == t { Scalar::one() } else { Scalar::zero() };
                (v + s_mat[(i, t)].clone()) * half()
            })
            .collect();
        let col_m: Vec<Scalar> = (0..nd)
            .map(|i| {
                let v = if i == t { Scalar::one() } else { Scalar::zero() };
                (v - s_mat[(i, t)].clone()) * half()
            })
            .collect();
        plus_rows.push(col_p);
        minus_rows.push(col_m);
    }
    let (pb, _) = row_space_basis(plus_rows);
    let (mb, _) = row_space_basis(minus_rows);
    if pb.len() + mb.len() != nd {
        return Err(not_elementary("grading eigenspaces do not fill the block"));
    }
    let mut q: ScalarMat = Mat::zero(nd, nd);
    for (j, v) in pb.iter().chain(mb.iter()).enumerate() {
        for i in 0..nd {
            q[(i, j)] = v[i].clone();
        }
    }
    let qi = q.inverse().ok_or_else(|| not_elementary("eigenbasis is singular"))?;
    let rho: Vec<ScalarMat> = rho.iter().map(|m| qi.mul(m).mul(&q)).collect();
    let s_diag = Mat::from_fn(nd, nd, |i, j| {
        if i != j {
            Scalar::zero()
        } else if i < pb.len() {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    });
    let targets: Vec<ScalarMat> = (0..n)
        .map(|g| rho_of_vec(&rho, &a.apply_sigma(&a.basis_vec(g)), nd))
        .collect();
    let j = transport_sigma(&rho, &targets, nd)?;
    Ok(MatrixModel {
        parity: Parity::Even,
        n: nd,
        grading: Some(s_diag),
        swap_form: None,
        j,
        rho,
    })
}

fn odd_model(a: &GradedBasisAlgebra, sk: &Skeleton, r: usize) -> Result<MatrixModel, Error> {
    let n = a.dim();
    if a.degree[r] != 1 {
        return Err(not_elementary("central monomial is not odd, so the grading fixes both blocks"));
    }
    let cr = normalized_involution(sk, a, r)?;
    let mut p_plus = cr.clone();
    p_plus[sk.unit] = p_plus[sk.unit].clone() + Scalar::one();
    let p_plus: Vec<Scalar> = p_plus.iter().map(|v| v.clone() * half()).collect();
    let (_, gens) = isotropic_subgroup(sk, n, &[r]);
    let e = column_idempotent(a, sk, &gens, Some(p_plus))?;
    let (rho, nd) = represent(a, &e)?;
    if 2 * nd * nd != n {
        return Err(not_elementary(format!("blocks of size {nd} do not fill dimension {n}")));
    }
    // does σ preserve the two central blocks or swap them?
    let sigma_cr = a.apply_sigma(&cr);
    let neg_cr: Vec<Scalar> = cr.iter().map(|v| -v.clone()).collect();
    let swap = if sigma_cr == cr {
        false
    } else if sigma_cr == neg_cr {
        true
    } else {
        return Err(Error::NotRealStructure(
            "sigma does not act by ±1 on the central involution".into(),
        ));
    };
    let targets: Vec<ScalarMat> = (0..n)
        .map(|g| {
            let mut image = a.apply_sigma(&a.basis_vec(g));
            if swap && a.degree[g] == 1 {
                // block component of σ routes through the grading automorphism
                image = image.iter().map(|v| -v.clone()).collect();
            }
            rho_of_vec(&rho, &image, nd)
        })
        .collect();
    let j = transport_sigma(&rho, &targets, nd)?;
    Ok(MatrixModel {
        parity: Parity::Odd,
        n: nd,
        grading: None,
        swap_form: Some(swap),
        j,
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{graded_tensor, make_clifford};
    use num_traits::Signed;

    #[test]
    fn clifford_two_generators_is_one_even_block() {
        let m = matrix_model(&make_clifford(0, 2).unwrap()).unwrap();
        assert_eq!(m.parity, Parity::Even);
        assert_eq!(m.n, 2);
        let s = m.grading.unwrap();
        // diagonal ±1 with one of each
        let tr = s[(0, 0)].clone() + s[(1, 1)].clone();
        assert!(tr.is_zero());
    }

    #[test]
    fn clifford_one_generator_is_two_blocks() {
        let m = matrix_model(&make_clifford(0, 1).unwrap()).unwrap();
        assert_eq!(m.parity, Parity::Odd);
        assert_eq!(m.n, 1);
        assert_eq!(m.swap_form, Some(false));
        assert!(m.j_square_scalar().unwrap().is_positive());
    }

    #[test]
    fn skew_generator_swaps_blocks() {
        let m = matrix_model(&make_clifford(1, 0).unwrap()).unwrap();
        assert_eq!(m.parity, Parity::Odd);
        assert_eq!(m.swap_form, Some(true));
        assert!(m.j_square_scalar().unwrap().is_positive());
    }

    #[test]
    fn four_generators_give_a_four_by_four_block() {
        let m = matrix_model(&make_clifford(0, 4).unwrap()).unwrap();
        assert_eq!(m.parity, Parity::Even);
        assert_eq!(m.n, 4);
        m.j_square_scalar().unwrap();
        m.grading_sign_of_j().unwrap();
    }

    #[test]
    fn three_generators_give_two_blocks_of_size_two() {
        let m = matrix_model(&make_clifford(0, 3).unwrap()).unwrap();
        assert_eq!(m.parity, Parity::Odd);
        assert_eq!(m.n, 2);
        m.j_square_scalar().unwrap();
    }

    #[test]
    fn representation_is_multiplicative() {
        for (p, q) in [(0, 2), (1, 1), (2, 0), (0, 4)] {
            let a = make_clifford(p, q).unwrap();
            let m = matrix_model(&a).unwrap();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let prod = rho_of_vec(
                        &m.rho,
                        &a.mul_vec(&a.basis_vec(i), &a.basis_vec(j)),
                        m.n,
                    );
                    assert_eq!(m.rho[i].mul(&m.rho[j]), prod, "({p},{q}) at {i},{j}");
                }
            }
        }
    }

    #[test]
    fn grading_conjugation_matches_degrees() {
        let a = make_clifford(2, 2).unwrap();
        let m = matrix_model(&a).unwrap();
        let s = m.grading.clone().unwrap();
        for g in 0..a.dim() {
            let conj = s.mul(&m.rho[g]).mul(&s);
            if a.degree[g] == 0 {
                assert_eq!(conj, m.rho[g]);
            } else {
                assert_eq!(conj, m.rho[g].neg());
            }
        }
    }

    #[test]
    fn tensor_models_have_multiplicative_dimensions() {
        let a = graded_tensor(&make_clifford(0, 1).unwrap(), &make_clifford(0, 1).unwrap());
        let m = matrix_model(&a).unwrap();
        assert_eq!(m.parity, Parity::Even);
        assert_eq!(m.n, 2);
    }

    #[test]
    fn non_monomial_input_is_rejected() {
        use crate::algebra::{AntiLinear, GradedBasisAlgebra};
        use num_traits::One;
        // ℂ ⊕ ℂ on idempotent coordinates: units multiply fine but the
        // algebra unit is e₀ + e₁, not a basis monomial
        let one = || Scalar::one();
        let mul = vec![vec![(0, one())], vec![], vec![], vec![(1, one())]];
        let a = GradedBasisAlgebra::new(
            vec![0, 0],
            mul,
            AntiLinear::identity(2),
            AntiLinear::identity(2),
        );
        match matrix_model(&a) {
            Err(Error::NotElementary(msg)) => assert!(msg.contains("monomial"), "{msg}"),
            other => panic!("expected NotElementary, got {other:?}"),
        }
    }
}
