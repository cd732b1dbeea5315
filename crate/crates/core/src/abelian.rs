//! Finitely generated abelian groups in presented form.
//!
//! A [`Presentation`] is a generator list with orders (`0` marks a free
//! generator), i.e. the group `⊕ᵢ ℤ/oᵢ` with `ℤ/0 = ℤ`. Homomorphisms are
//! integer matrices acting on row vectors of generator coordinates. On top of
//! this sit exact kernel and subquotient computations with deterministic
//! class representatives; they power every cohomology value in the crate.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

use crate::error::Error;
use crate::mat::Mat;
use crate::smith::{Int, IntMat, Smith, TrackOpts};

fn int(n: i64) -> Int {
    Int::from(n)
}

/// Canonical form of a finitely generated abelian group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FgGroup {
    pub free_rank: usize,
    /// Ascending divisibility chain, every entry ≥ 2.
    pub invariant_factors: Vec<Int>,
}

impl FgGroup {
    pub fn trivial() -> FgGroup {
        FgGroup { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// None when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Build from Smith diagonal entries describing ℤ^n / rowspan, where the
    /// diagonal has `rank` nonzero entries and the quotient has `n` generators.
    pub fn from_smith_diag(n: usize, diag: &[Int]) -> FgGroup {
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let factors: Vec<Int> =
            diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
        FgGroup { free_rank: n - nonzero, invariant_factors: factors }
    }

    pub fn direct_sum(&self, other: &FgGroup) -> FgGroup {
        let mut primary: Vec<(Int, u32)> = Vec::new();
        for f in self.invariant_factors.iter().chain(&other.invariant_factors) {
            primary.extend(factorize(f));
        }
        FgGroup::from_primary(self.free_rank + other.free_rank, primary)
    }

    /// Reassemble invariant factors from prime-power pieces.
    pub fn from_primary(free_rank: usize, primary: Vec<(Int, u32)>) -> FgGroup {
        use std::collections::BTreeMap;
        let mut by_prime: BTreeMap<Int, Vec<u32>> = BTreeMap::new();
        for (p, e) in primary {
            by_prime.entry(p).or_default().push(e);
        }
        let mut cols = 0;
        for exps in by_prime.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            cols = cols.max(exps.len());
        }
        // Factor j (from the largest) multiplies the j-th largest power of each prime.
        let mut factors = Vec::new();
        for j in 0..cols {
            let mut f = Int::one();
            for (p, exps) in &by_prime {
                if let Some(&e) = exps.get(j) {
                    f *= p.pow(e);
                }
            }
            factors.push(f);
        }
        factors.reverse();
        FgGroup { free_rank, invariant_factors: factors }
    }
}

pub(crate) fn factorize(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = int(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Generators with orders; order 0 means a free ℤ generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub orders: Vec<Int>,
}

impl Presentation {
    pub fn new(orders: Vec<Int>) -> Presentation {
        Presentation { orders }
    }

    pub fn free(n: usize) -> Presentation {
        Presentation { orders: vec![Int::zero(); n] }
    }

    pub fn trivial() -> Presentation {
        Presentation { orders: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Repeat the generator block `count` times (cochain groups).
    pub fn repeated(&self, count: usize) -> Presentation {
        let mut orders = Vec::with_capacity(self.len() * count);
        for _ in 0..count {
            orders.extend(self.orders.iter().cloned());
        }
        Presentation { orders }
    }

    /// Reduce a coordinate vector into canonical range mod each order.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.len());
        x.iter()
            .zip(&self.orders)
            .map(|(v, o)| if o.is_zero() { v.clone() } else { v.mod_floor(o) })
            .collect()
    }

    /// Rows `oᵢ·eᵢ` for the torsion generators.
    pub fn relation_rows(&self) -> IntMat {
        let rows: Vec<Vec<Int>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut r = vec![Int::zero(); self.len()];
                r[i] = o.clone();
                r
            })
            .collect();
        if rows.is_empty() {
            Mat::zero(0, self.len())
        } else {
            Mat::from_rows(rows)
        }
    }

    /// The group this presentation defines, in canonical form.
    pub fn fg_group(&self) -> FgGroup {
        let mut primary = Vec::new();
        let mut free = 0;
        for o in &self.orders {
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                primary.extend(factorize(o));
            }
        }
        FgGroup::from_primary(free, primary)
    }

    /// All elements, coordinates reduced; None when infinite or too large.
    pub fn enumerate(&self, cap: u64) -> Option<Vec<Vec<Int>>> {
        let mut total: u64 = 1;
        for o in &self.orders {
            if o.is_zero() {
                return None;
            }
            let o: u64 = o.to_string().parse().ok()?;
            total = total.checked_mul(o)?;
            if total > cap {
                return None;
            }
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![Int::zero(); self.len()];
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.len() {
                    return Some(out);
                }
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = Int::zero();
                i += 1;
            }
        }
    }
}

/// Basis (rows) of the lattice `{x : x·M = 0}`.
pub fn lattice_kernel(m: &IntMat) -> IntMat {
    let s = Smith::with_tracking(m, TrackOpts::U_ONLY);
    let rows: Vec<Vec<Int>> = (s.rank..m.rows()).map(|i| s.u().row_vec(i)).collect();
    if rows.is_empty() {
        Mat::zero(0, m.rows())
    } else {
        Mat::from_rows(rows)
    }
}

/// Basis (rows) of the lattice `{x : (x·M)ⱼ ≡ 0 mod ordersⱼ for all j}`,
/// where order 0 demands exact vanishing.
pub fn kernel_mod_orders(m: &IntMat, orders: &[Int]) -> IntMat {
    assert_eq!(orders.len(), m.cols());
    let free_cols: Vec<usize> = (0..m.cols()).filter(|&j| orders[j].is_zero()).collect();
    let tors_cols: Vec<usize> = (0..m.cols()).filter(|&j| !orders[j].is_zero()).collect();

    // Phase 1: exact kernel on the free columns.
    let k0 = if free_cols.is_empty() {
        Mat::identity(m.rows())
    } else {
        lattice_kernel(&m.submatrix_cols(&free_cols))
    };
    if k0.rows() == 0 || tors_cols.is_empty() {
        return k0;
    }

    // Phase 2: congruences on the torsion columns, scaled to a common modulus.
    let ell = tors_cols.iter().fold(Int::one(), |acc, &j| acc.lcm(&orders[j]));
    let mut m2 = k0.mul(&m.submatrix_cols(&tors_cols));
    for (jj, &j) in tors_cols.iter().enumerate() {
        let scale = &ell / &orders[j];
        if !scale.is_one() {
            for i in 0..m2.rows() {
                m2[(i, jj)] = m2[(i, jj)].clone() * scale.clone();
            }
        }
    }
    let s = Smith::with_tracking(&m2, TrackOpts::U_ONLY);
    // x' = w·U with wᵢ·dᵢ ≡ 0 mod ℓ: wᵢ multiple of ℓ/gcd(dᵢ, ℓ).
    let mut basis_rows = Vec::with_capacity(k0.rows());
    for i in 0..k0.rows() {
        let row = s.u().row_vec(i);
        if i < s.rank {
            let mult = &ell / s.diag[i].gcd(&ell);
            basis_rows.push(row.into_iter().map(|x| x * &mult).collect());
        } else {
            basis_rows.push(row);
        }
    }
    Mat::from_rows(basis_rows).mul(&k0)
}

/// Coordinates `c` with `c·basis = x`, for a basis of independent rows.
pub fn lattice_coords(basis_smith: &Smith, basis: &IntMat, x: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(x.len(), basis.cols());
    let xv = basis_smith.v().apply_row(x);
    let mut w = vec![Int::zero(); basis.rows()];
    for j in 0..basis.cols() {
        if j < basis_smith.rank {
            let (q, r) = xv[j].div_rem(&basis_smith.diag[j]);
            if !r.is_zero() {
                return None;
            }
            w[j] = q;
        } else if !xv[j].is_zero() {
            return None;
        }
    }
    Some(basis_smith.u().apply_row(&w))
}

/// One solution `x` of `x·M ≡ target (mod orders)`, or None.
pub fn solve_mod_orders(m: &IntMat, orders: &[Int], target: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(orders.len(), m.cols());
    assert_eq!(target.len(), m.cols());
    let rel = Presentation::new(orders.to_vec()).relation_rows();
    let stacked = m.stack(&rel);
    let s = Smith::with_tracking(&stacked, TrackOpts::UV);
    let tv = s.v().apply_row(target);
    let mut w = vec![Int::zero(); stacked.rows()];
    for j in 0..stacked.cols() {
        if j < s.rank {
            let (q, r) = tv[j].div_rem(&s.diag[j]);
            if !r.is_zero() {
                return None;
            }
            w[j] = q;
        } else if !tv[j].is_zero() {
            return None;
        }
    }
    let full = s.u().apply_row(&w);
    Some(full[..m.rows()].to_vec())
}

/// Homomorphism between presented groups: `x ↦ x·matrix` on row coordinates.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub src: Presentation,
    pub dst: Presentation,
    pub matrix: IntMat,
}

impl GroupHom {
    pub fn new(src: Presentation, dst: Presentation, matrix: IntMat) -> Result<GroupHom, Error> {
        if matrix.rows() != src.len() || matrix.cols() != dst.len() {
            return Err(Error::Shape(format!(
                "hom matrix {}x{} does not match presentations {} -> {}",
                matrix.rows(),
                matrix.cols(),
                src.len(),
                dst.len()
            )));
        }
        let h = GroupHom { src, dst, matrix };
        h.check_well_defined()?;
        Ok(h)
    }

    pub fn zero(src: Presentation, dst: Presentation) -> GroupHom {
        let matrix = Mat::zero(src.len(), dst.len());
        GroupHom { src, dst, matrix }
    }

    pub fn identity(p: &Presentation) -> GroupHom {
        GroupHom { src: p.clone(), dst: p.clone(), matrix: Mat::identity(p.len()) }
    }

    fn check_well_defined(&self) -> Result<(), Error> {
        for (i, o) in self.src.orders.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for j in 0..self.dst.len() {
                let v = o.clone() * self.matrix[(i, j)].clone();
                let oj = &self.dst.orders[j];
                let ok = if oj.is_zero() { v.is_zero() } else { v.is_multiple_of(oj) };
                if !ok {
                    return Err(Error::NotWellDefined(format!(
                        "generator {i} of order {o} maps outside the target relations at column {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.dst.reduce(&self.matrix.apply_row(x))
    }

    /// `self` then `g`.
    pub fn then(&self, g: &GroupHom) -> GroupHom {
        assert_eq!(self.dst.orders, g.src.orders);
        GroupHom { src: self.src.clone(), dst: g.dst.clone(), matrix: self.matrix.mul(&g.matrix) }
    }

    /// Kernel as an embedded subgroup.
    pub fn kernel(&self) -> Subgroup {
        let zb = kernel_mod_orders(&self.matrix, &self.dst.orders);
        Subgroup::from_lattice_basis(zb, &self.src)
    }

    /// Canonical form of `dst / im(self)`.
    pub fn cokernel(&self) -> FgGroup {
        let stacked = self.matrix.stack(&self.dst.relation_rows());
        let s = Smith::with_tracking(&stacked, TrackOpts::NONE);
        FgGroup::from_smith_diag(self.dst.len(), &s.diag)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.cokernel().is_trivial() && self.kernel().pres.fg_group().is_trivial()
    }

    /// Image as an embedded subgroup of `dst`.  The generating lattice is the
    /// row span of the matrix together with the destination relations, so the
    /// result is saturated with respect to the presentation.
    pub fn image(&self) -> Subgroup {
        let stacked = self.matrix.stack(&self.dst.relation_rows());
        Subgroup::from_lattice_basis(row_lattice_basis(&stacked), &self.dst)
    }
}

/// Basis (rows) of the lattice spanned by the rows of `m`.
///
/// With U·M·V = S we have rowspan(M) = rowspan(S·V⁻¹), whose nonzero rows are
/// dᵢ times the i-th row of V⁻¹.
pub fn row_lattice_basis(m: &IntMat) -> IntMat {
    let opts = TrackOpts { u: false, v: false, u_inv: false, v_inv: true };
    let s = Smith::with_tracking(m, opts);
    let rows: Vec<Vec<Int>> = (0..s.rank)
        .map(|i| {
            let mut r = s.v_inv().row_vec(i);
            for x in &mut r {
                *x = &*x * &s.diag[i];
            }
            r
        })
        .collect();
    if rows.is_empty() {
        Mat::zero(0, m.cols())
    } else {
        Mat::from_rows(rows)
    }
}

/// A subgroup of a presented group, given by a lattice basis in generator
/// coordinates, carrying its own canonical presentation.
pub struct Subgroup {
    /// Canonical presentation of the subgroup.
    pub pres: Presentation,
    /// kept-generator rows embedding the subgroup into the ambient group.
    pub embed: IntMat,
    ambient: Presentation,
    zb: IntMat,
    zb_smith: Smith,
    vr: IntMat,
    kept: Vec<usize>,
}

impl Subgroup {
    /// `zb` rows must be a basis of a lattice in ℤ^{ambient} that is saturated
    /// with respect to the ambient relations (contains every oᵢ·eᵢ).
    pub fn from_lattice_basis(zb: IntMat, ambient: &Presentation) -> Subgroup {
        assert_eq!(zb.cols(), ambient.len());
        let zb_smith = Smith::with_tracking(&zb, TrackOpts::UV);
        // Express ambient relations in the lattice basis.
        let rel = ambient.relation_rows();
        let mut rel_coords = Vec::with_capacity(rel.rows());
        for i in 0..rel.rows() {
            let c = lattice_coords(&zb_smith, &zb, rel.row(i))
                .expect("ambient relations must lie in the subgroup lattice");
            rel_coords.push(c);
        }
        let relmat = if rel_coords.is_empty() {
            Mat::zero(0, zb.rows())
        } else {
            Mat::from_rows(rel_coords)
        };
        let rs = Smith::with_tracking(&relmat, TrackOpts::ALL);
        let z = zb.rows();
        let mut orders = vec![Int::zero(); z];
        for (i, d) in rs.diag.iter().enumerate() {
            orders[i] = d.clone();
        }
        let kept: Vec<usize> = (0..z).filter(|&i| !orders[i].is_one()).collect();
        let pres = Presentation::new(kept.iter().map(|&i| orders[i].clone()).collect());
        // New generator i is e_i·V_r⁻¹ in lattice coordinates.
        let new_basis = rs.v_inv().mul(&zb);
        let embed_rows: Vec<Vec<Int>> = kept.iter().map(|&i| new_basis.row_vec(i)).collect();
        let embed = if embed_rows.is_empty() {
            Mat::zero(0, ambient.len())
        } else {
            Mat::from_rows(embed_rows)
        };
        Subgroup {
            pres,
            embed,
            ambient: ambient.clone(),
            zb,
            zb_smith,
            vr: rs.v().clone(),
            kept,
        }
    }

    /// Whole ambient group as a subgroup of itself.
    pub fn full(ambient: &Presentation) -> Subgroup {
        Subgroup::from_lattice_basis(Mat::identity(ambient.len()), ambient)
    }

    /// Subgroup coordinates of an ambient vector, or None when it is not in
    /// the subgroup lattice.
    pub fn coords_of(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = lattice_coords(&self.zb_smith, &self.zb, x)?;
        let y = self.vr.apply_row(&c);
        Some(self.pres.reduce(&self.kept.iter().map(|&i| y[i].clone()).collect::<Vec<_>>()))
    }

    /// Ambient vector of subgroup coordinates.
    pub fn embed_row(&self, k: &[Int]) -> Vec<Int> {
        self.ambient.reduce(&self.embed.apply_row(k))
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }
}

/// `ker(d_out) / im(d_in)` with deterministic representatives.
pub struct Subquotient {
    pub group: FgGroup,
    /// Ambient representatives of the canonical generators.
    pub reps: Vec<Vec<Int>>,
    ambient: Presentation,
    zb: IntMat,
    zb_smith: Smith,
    vq: IntMat,
    /// order of each lattice-basis position in the quotient (0 = free).
    qorders: Vec<Int>,
    kept: Vec<usize>,
}

pub fn subquotient(d_out: &GroupHom, d_in: &GroupHom) -> Result<Subquotient, Error> {
    if d_in.dst.orders != d_out.src.orders {
        return Err(Error::Shape("d_in target and d_out source differ".into()));
    }
    let ambient = d_out.src.clone();
    let zb = kernel_mod_orders(&d_out.matrix, &d_out.dst.orders);
    let zb_smith = Smith::with_tracking(&zb, TrackOpts::UV);

    let boundary = d_in.matrix.stack(&ambient.relation_rows());
    let mut q_rows = Vec::with_capacity(boundary.rows());
    for i in 0..boundary.rows() {
        match lattice_coords(&zb_smith, &zb, boundary.row(i)) {
            Some(c) => q_rows.push(c),
            None => {
                return Err(if i < d_in.matrix.rows() {
                    Error::CompositionNotZero(i)
                } else {
                    Error::Shape("ambient relation escapes the cocycle lattice".into())
                })
            }
        }
    }
    let z = zb.rows();
    let qmat = if q_rows.is_empty() { Mat::zero(0, z) } else { Mat::from_rows(q_rows) };
    let qs = Smith::with_tracking(&qmat, TrackOpts::ALL);
    let mut qorders = vec![Int::zero(); z];
    for (i, d) in qs.diag.iter().enumerate() {
        qorders[i] = d.clone();
    }
    let kept: Vec<usize> = (0..z).filter(|&i| !qorders[i].is_one()).collect();
    let group = FgGroup::from_smith_diag(z, &qs.diag);

    let new_basis = qs.v_inv().mul(&zb);
    let reps: Vec<Vec<Int>> =
        kept.iter().map(|&i| ambient.reduce(&new_basis.row_vec(i))).collect();
    Ok(Subquotient {
        group,
        reps,
        ambient,
        zb,
        zb_smith,
        vq: qs.v().clone(),
        qorders,
        kept,
    })
}

impl Subquotient {
    /// Canonical class coordinates of a cocycle (ambient coordinates).
    /// None when the vector does not satisfy the cocycle condition.
    pub fn class_of(&self, x: &[Int]) -> Option<Vec<Int>> {
        let c = lattice_coords(&self.zb_smith, &self.zb, x)?;
        let y = self.vq.apply_row(&c);
        Some(
            self.kept
                .iter()
                .map(|&i| {
                    if self.qorders[i].is_zero() {
                        y[i].clone()
                    } else {
                        y[i].mod_floor(&self.qorders[i])
                    }
                })
                .collect(),
        )
    }

    pub fn zero_class(&self) -> Vec<Int> {
        vec![Int::zero(); self.kept.len()]
    }

    pub fn is_coboundary(&self, x: &[Int]) -> Option<bool> {
        Some(self.class_of(x)?.iter().all(|c| c.is_zero()))
    }

    /// Ambient representative of given class coordinates.
    pub fn rep_of(&self, class: &[Int]) -> Vec<Int> {
        assert_eq!(class.len(), self.kept.len());
        let mut acc = vec![Int::zero(); self.ambient.len()];
        for (k, c) in class.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.reps[k].iter().enumerate() {
                acc[j] += c.clone() * r.clone();
            }
        }
        self.ambient.reduce(&acc)
    }

    /// Orders of the canonical generators (0 = infinite).
    pub fn gen_orders(&self) -> Vec<Int> {
        self.kept.iter().map(|&i| self.qorders[i].clone()).collect()
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    /// Add class coordinate vectors.
    pub fn add_classes(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce_class(&a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect::<Vec<_>>())
    }

    pub fn neg_class(&self, a: &[Int]) -> Vec<Int> {
        self.reduce_class(&a.iter().map(|x| -x.clone()).collect::<Vec<_>>())
    }

    pub fn reduce_class(&self, a: &[Int]) -> Vec<Int> {
        assert_eq!(a.len(), self.kept.len());
        self.kept
            .iter()
            .zip(a)
            .map(|(&i, v)| {
                if self.qorders[i].is_zero() {
                    v.clone()
                } else {
                    v.mod_floor(&self.qorders[i])
                }
            })
            .collect()
    }

    /// Enumerate all classes; None when infinite or above the cap.
    pub fn enumerate_classes(&self, cap: u64) -> Option<Vec<Vec<Int>>> {
        Presentation::new(self.gen_orders()).enumerate(cap)
    }
}

/// Identify a finite abelian group given by closure data: elements with an
/// addition. Counts solutions of `p^k·x = 0` to recover the primary type.
pub fn abelian_type_from_table<E, FAdd, FZero>(
    elements: &[E],
    add: FAdd,
    is_zero: FZero,
) -> FgGroup
where
    E: Clone + Eq,
    FAdd: Fn(&E, &E) -> E,
    FZero: Fn(&E) -> bool,
{
    let n = elements.len() as u64;
    if n <= 1 {
        return FgGroup::trivial();
    }
    let mut primary = Vec::new();
    for (p, _) in factorize(&Int::from(n)) {
        let p_u: u64 = p.to_string().parse().unwrap();
        // count[k] = #{x : p^k x = 0}
        let mut mults: Vec<u32> = Vec::new();
        let mut prev_count = 1u64;
        let mut powers: Vec<E> = elements.to_vec();
        loop {
            // raise each accumulator to the p-th multiple
            powers = powers
                .iter()
                .map(|x| {
                    let mut acc = x.clone();
                    for _ in 1..p_u {
                        acc = add(&acc, x);
                    }
                    acc
                })
                .collect();
            let count = powers.iter().filter(|x| is_zero(x)).count() as u64;
            if count == prev_count {
                break;
            }
            // number of cyclic p-factors with exponent ≥ this level
            let ratio = count / prev_count;
            let mut m = 0u32;
            let mut r = ratio;
            while r > 1 {
                r /= p_u;
                m += 1;
            }
            mults.push(m);
            prev_count = count;
        }
        // mults[k] = #factors with exponent ≥ k+1
        for k in 0..mults.len() {
            let here = mults[k];
            let deeper = if k + 1 < mults.len() { mults[k + 1] } else { 0 };
            for _ in 0..(here - deeper) {
                primary.push((p.clone(), (k + 1) as u32));
            }
        }
    }
    FgGroup::from_primary(0, primary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: Vec<Vec<i64>>) -> IntMat {
        Mat::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect(),
        )
    }

    #[test]
    fn cokernel_examples() {
        // ℤ² --diag(1,6)--> ℤ²: cokernel ℤ/6
        let h = GroupHom::new(
            Presentation::free(2),
            Presentation::free(2),
            im(vec![vec![1, 0], vec![0, 6]]),
        )
        .unwrap();
        assert_eq!(h.cokernel(), FgGroup { free_rank: 0, invariant_factors: vec![int(6)] });

        // zero map ℤ → ℤ²: cokernel free of rank 2
        let z = GroupHom::zero(Presentation::free(1), Presentation::free(2));
        assert_eq!(z.cokernel(), FgGroup { free_rank: 2, invariant_factors: vec![] });

        // diag(2,4): ℤ/2 ⊕ ℤ/4
        let h = GroupHom::new(
            Presentation::free(2),
            Presentation::free(2),
            im(vec![vec![2, 0], vec![0, 4]]),
        )
        .unwrap();
        assert_eq!(h.cokernel(), FgGroup { free_rank: 0, invariant_factors: vec![int(2), int(4)] });
    }

    #[test]
    fn kernel_mod_orders_smoke() {
        // {x : 2x ≡ 0 mod 4} = 2ℤ
        let m = im(vec![vec![2]]);
        let k = kernel_mod_orders(&m, &[int(4)]);
        assert_eq!(k.rows(), 1);
        assert!(k[(0, 0)].abs() == int(2));

        // {x : 2x = 0 in ℤ} = 0
        let k = kernel_mod_orders(&m, &[int(0)]);
        assert_eq!(k.rows(), 0);

        // {(x,y) : x + y = 0}
        let m = im(vec![vec![1], vec![1]]);
        let k = kernel_mod_orders(&m, &[int(0)]);
        assert_eq!(k.rows(), 1);
        assert_eq!(k[(0, 0)].clone() + k[(0, 1)].clone(), int(0));
    }

    #[test]
    fn solve_mod_orders_roundtrip() {
        let m = im(vec![vec![2, 1], vec![0, 3]]);
        let orders = [int(4), int(6)];
        let target = [int(2), int(1)];
        let x = solve_mod_orders(&m, &orders, &target).unwrap();
        let y = m.apply_row(&x);
        for j in 0..2 {
            assert!((y[j].clone() - target[j].clone()).is_multiple_of(&orders[j]));
        }
    }

    #[test]
    fn subquotient_z2_bar_degree_2() {
        // Bar complex of the group ℤ/2 with ℤ/2 coefficients.
        // C¹ = (ℤ/2)², C² = (ℤ/2)⁴, C³ = (ℤ/2)⁸ indexed by tuples over {1,s}.
        // Frozen from brute force over all 16 2-cochains: H² = ℤ/2.
        // tuples level1: [1],[s]; level2: (1,1),(1,s),(s,1),(s,s); level3: 8 triples.
        let c1 = Presentation::new(vec![int(2); 2]);
        let c2 = Presentation::new(vec![int(2); 4]);
        let c3 = Presentation::new(vec![int(2); 8]);
        // index: g=0 ↦ 1, g=1 ↦ s; tuple (a,b) index = 2a+b; triple (a,b,c) = 4a+2b+c
        let mut d1 = Mat::zero(2, 4);
        for g in 0..2usize {
            for (ab, pair) in [(0, (0, 0)), (1, (0, 1)), (2, (1, 0)), (3, (1, 1))] {
                let (a, b) = pair;
                // (dφ)(a,b) = φ(b) − φ(ab) + φ(a)
                let mut coef = 0i64;
                if b == g {
                    coef += 1;
                }
                if (a + b) % 2 == g {
                    coef -= 1;
                }
                if a == g {
                    coef += 1;
                }
                d1[(g, ab)] = int(coef);
            }
        }
        let mut d2 = Mat::zero(4, 8);
        for a in 0..2usize {
            for b in 0..2usize {
                for t in 0..8usize {
                    let (x, y, z) = (t / 4, (t / 2) % 2, t % 2);
                    // (dφ)(x,y,z) = φ(y,z) − φ(xy,z) + φ(x,yz) − φ(x,y)
                    let mut coef = 0i64;
                    if (y, z) == (a, b) {
                        coef += 1;
                    }
                    if ((x + y) % 2, z) == (a, b) {
                        coef -= 1;
                    }
                    if (x, (y + z) % 2) == (a, b) {
                        coef += 1;
                    }
                    if (x, y) == (a, b) {
                        coef -= 1;
                    }
                    d2[(2 * a + b, t)] = int(coef);
                }
            }
        }
        let h_in = GroupHom::new(c1, c2.clone(), d1).unwrap();
        let h_out = GroupHom::new(c2, c3, d2).unwrap();
        let sq = subquotient(&h_out, &h_in).unwrap();
        assert_eq!(sq.group, FgGroup { free_rank: 0, invariant_factors: vec![int(2)] });
        // representative round-trip
        let rep = sq.rep_of(&[int(1)]);
        assert_eq!(sq.class_of(&rep).unwrap(), vec![int(1)]);
    }

    #[test]
    fn subgroup_roundtrip() {
        // subgroup 2ℤ/8 of ℤ/8
        let amb = Presentation::new(vec![int(8)]);
        let zb = im(vec![vec![2]]);
        let sub = Subgroup::from_lattice_basis(zb, &amb);
        assert_eq!(sub.pres.fg_group(), FgGroup { free_rank: 0, invariant_factors: vec![int(4)] });
        let c = sub.coords_of(&[int(6)]).unwrap();
        assert_eq!(sub.embed_row(&c), vec![int(6)]);
        assert!(sub.coords_of(&[int(3)]).is_none());
    }

    #[test]
    fn abelian_type_from_table_identifies_z2_x_z4() {
        let mut elements = Vec::new();
        for a in 0..2i64 {
            for b in 0..4i64 {
                elements.push((a, b));
            }
        }
        let add = |x: &(i64, i64), y: &(i64, i64)| ((x.0 + y.0) % 2, (x.1 + y.1) % 4);
        let t = abelian_type_from_table(&elements, add, |x| *x == (0, 0));
        assert_eq!(t, FgGroup { free_rank: 0, invariant_factors: vec![int(2), int(4)] });
    }

    #[test]
    fn direct_sum_canonicalizes() {
        let a = FgGroup { free_rank: 1, invariant_factors: vec![int(4)] };
        let b = FgGroup { free_rank: 0, invariant_factors: vec![int(6)] };
        let s = a.direct_sum(&b);
        assert_eq!(s, FgGroup { free_rank: 1, invariant_factors: vec![int(2), int(12)] });
    }

    #[test]
    fn display_formats() {
        assert_eq!(FgGroup::trivial().to_string(), "0");
        assert_eq!(
            FgGroup { free_rank: 2, invariant_factors: vec![int(2), int(6)] }.to_string(),
            "Z^2 x Z/2 x Z/6"
        );
        assert_eq!(FgGroup { free_rank: 0, invariant_factors: vec![int(8)] }.to_string(), "Z/8");
    }
}
