//! Brauer groups of a finite groupoid with involution, assembled from its
//! cohomology. A class is a triple (t, d, w): a degree-0 type class, a
//! degree-1 grading class mod 2, and a degree-2 circle class. Addition twists
//! the degree-2 part by the cup product of the degree-1 parts, so the group
//! is a central extension rather than a direct sum; the isomorphism type is
//! read off the materialized addition table, never assumed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::abelian::{factorize, FgGroup};
use crate::cohomology::{
    cohomology, cup11, s1_cohomology, Coefficient, CohomologyGroup, S1Cohomology,
};
use crate::error::Error;
use crate::groupoid::{nerve, quotient_by_involution, FiniteRealGroupoid, Nerve};
use crate::mat::Mat;
use crate::smith::Int;

/// Classes are materialized only when the total order stays below this.
pub const MATERIALIZE_CAP: u64 = 1 << 14;

/// Which of the three assembled groups a context computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Involution-equivariant classes; the type part is mod 8.
    Real,
    /// Plain classes with the involution forgotten; the type part is mod 2.
    Complex,
    /// Trivial-involution classes with a fixed μ₂ in degree two.
    Orthogonal,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Flavor, Error> {
        match s {
            "brR" => Ok(Flavor::Real),
            "br" => Ok(Flavor::Complex),
            "brO" => Ok(Flavor::Orthogonal),
            _ => Err(Error::Parse(format!("unknown flavor '{s}' (expected brR, br, brO)"))),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Real => "brR",
            Flavor::Complex => "br",
            Flavor::Orthogonal => "brO",
        })
    }
}

/// How the degree-0 part interacts with the involution: plain invariance
/// (t∘ρ = t) or negation (t∘ρ = −t). Invariance is the default: it is the
/// variant that reproduces the cyclic group of order eight over a point.
/// Reports compute both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TEquivariance {
    #[default]
    Id,
    Neg,
}

impl TEquivariance {
    pub fn parse(s: &str) -> Result<TEquivariance, Error> {
        match s {
            "id" => Ok(TEquivariance::Id),
            "neg" => Ok(TEquivariance::Neg),
            _ => Err(Error::Parse(format!("unknown equivariance '{s}' (expected id, neg)"))),
        }
    }
}

impl fmt::Display for TEquivariance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TEquivariance::Id => "id",
            TEquivariance::Neg => "neg",
        })
    }
}

/// Degree-2 coefficient theory: the stabilized circle tower, or a fixed μ₂.
enum WPart {
    Stable(S1Cohomology),
    Fixed(CohomologyGroup),
}

impl WPart {
    fn modulus(&self) -> u64 {
        match self {
            WPart::Stable(s) => s.modulus,
            WPart::Fixed(_) => 2,
        }
    }

    fn group(&self) -> &FgGroup {
        match self {
            WPart::Stable(s) => &s.group,
            WPart::Fixed(c) => &c.group,
        }
    }

    fn class_of(&self, cochain: &[Int]) -> Option<Vec<Int>> {
        match self {
            WPart::Stable(s) => s.class_of(cochain),
            WPart::Fixed(c) => c.class_of(cochain),
        }
    }

    fn rep_of(&self, class: &[Int]) -> Vec<Int> {
        match self {
            WPart::Stable(s) => s.rep_of(class),
            WPart::Fixed(c) => c.rep_of(class),
        }
    }

    fn gen_orders(&self) -> Vec<Int> {
        match self {
            WPart::Stable(s) => s.gen_orders(),
            WPart::Fixed(c) => c.gen_orders(),
        }
    }

    fn zero_class(&self) -> Vec<Int> {
        match self {
            WPart::Stable(s) => s.zero_class(),
            WPart::Fixed(c) => c.zero_class(),
        }
    }

    fn add_classes(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        match self {
            WPart::Stable(s) => s.add_classes(a, b),
            WPart::Fixed(c) => c.add_classes(a, b),
        }
    }

    fn neg_class(&self, a: &[Int]) -> Vec<Int> {
        match self {
            WPart::Stable(s) => s.neg_class(a),
            WPart::Fixed(c) => c.neg_class(a),
        }
    }

    fn enumerate_classes(&self, cap: u64) -> Option<Vec<Vec<Int>>> {
        match self {
            WPart::Stable(s) => s.enumerate_classes(cap),
            WPart::Fixed(c) => c.enumerate_classes(cap),
        }
    }
}

/// An element of an assembled Brauer group, in class coordinates of the three
/// cohomology groups of its context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrauerClass {
    pub t: Vec<Int>,
    pub d: Vec<Int>,
    pub w: Vec<Int>,
    tag: u64,
}

/// Cohomology of one groupoid packaged for Brauer-class arithmetic. All class
/// coordinates are relative to the groups computed here, so classes from
/// different contexts never mix.
pub struct BrauerContext {
    pub flavor: Flavor,
    pub tequiv: TEquivariance,
    /// Base modulus of the circle tower.
    pub m: u64,
    g: FiniteRealGroupoid,
    t: CohomologyGroup,
    d: CohomologyGroup,
    w: WPart,
    tag: u64,
}

fn fingerprint(g: &FiniteRealGroupoid, flavor: Flavor, m: u64, tequiv: TEquivariance) -> u64 {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let mut h = DefaultHasher::new();
    (flavor as u8, m, tequiv as u8).hash(&mut h);
    g.objects.hash(&mut h);
    for a in &g.arrows {
        (&a.name, a.src, a.tgt).hash(&mut h);
    }
    for x in 0..g.n_objects() {
        g.rho_obj(x).hash(&mut h);
    }
    for a in 0..g.n_arrows() {
        g.rho_arr(a).hash(&mut h);
    }
    h.finish()
}

impl BrauerContext {
    pub fn new(
        g: &FiniteRealGroupoid,
        flavor: Flavor,
        m: u64,
        tequiv: TEquivariance,
    ) -> Result<BrauerContext, Error> {
        if m == 0 || m % 2 != 0 {
            return Err(Error::OddOrder(m));
        }
        if flavor == Flavor::Orthogonal && !g.rho_is_trivial() {
            return Err(Error::NontrivialInvolution(
                "the orthogonal group is only assembled over a trivial involution".into(),
            ));
        }
        let real = flavor == Flavor::Real;
        let t_coeff = match (flavor, tequiv) {
            (Flavor::Complex, _) => Coefficient::z2(),
            (Flavor::Real, TEquivariance::Neg) => Coefficient {
                tag: "Z8neg".into(),
                orders: vec![Int::from(8)],
                alpha: Mat::identity(1).neg(),
            },
            _ => Coefficient::z8(),
        };
        let t = cohomology(g, 0, &t_coeff, real)?;
        let d = cohomology(g, 1, &Coefficient::z2(), real)?;
        let w = match flavor {
            Flavor::Orthogonal => WPart::Fixed(cohomology(g, 2, &Coefficient::z2(), false)?),
            _ => WPart::Stable(s1_cohomology(g, 2, real, Some(m))?),
        };
        let tag = fingerprint(g, flavor, m, tequiv);
        Ok(BrauerContext { flavor, tequiv, m, g: g.clone(), t, d, w, tag })
    }

    pub fn groupoid(&self) -> &FiniteRealGroupoid {
        &self.g
    }

    pub fn t_group(&self) -> &FgGroup {
        &self.t.group
    }

    pub fn d_group(&self) -> &FgGroup {
        &self.d.group
    }

    pub fn w_group(&self) -> &FgGroup {
        self.w.group()
    }

    pub fn zero(&self) -> BrauerClass {
        BrauerClass {
            t: self.t.zero_class(),
            d: self.d.zero_class(),
            w: self.w.zero_class(),
            tag: self.tag,
        }
    }

    /// A class from raw coordinates, reduced into canonical range.
    pub fn class(&self, t: &[Int], d: &[Int], w: &[Int]) -> Result<BrauerClass, Error> {
        let lens =
            (self.t.gen_orders().len(), self.d.gen_orders().len(), self.w.gen_orders().len());
        if t.len() != lens.0 || d.len() != lens.1 || w.len() != lens.2 {
            return Err(Error::Shape(format!(
                "expected coordinate lengths {lens:?}, got ({}, {}, {})",
                t.len(),
                d.len(),
                w.len()
            )));
        }
        Ok(BrauerClass {
            t: self.t.add_classes(t, &self.t.zero_class()),
            d: self.d.add_classes(d, &self.d.zero_class()),
            w: self.w.add_classes(w, &self.w.zero_class()),
            tag: self.tag,
        })
    }

    fn check(&self, x: &BrauerClass) -> Result<(), Error> {
        if x.tag != self.tag
            || x.t.len() != self.t.gen_orders().len()
            || x.d.len() != self.d.gen_orders().len()
            || x.w.len() != self.w.gen_orders().len()
        {
            return Err(Error::MixedContext(
                "class does not belong to this groupoid/flavor/modulus".into(),
            ));
        }
        Ok(())
    }

    /// Class of (d ⌣ d′) in the degree-2 part. The cup is 2-torsion valued,
    /// so it satisfies the reality condition automatically, and it comes from
    /// one tower level down, so it lands in the stable part.
    fn cup_class(&self, dx: &[Int], dy: &[Int]) -> Result<Vec<Int>, Error> {
        let rx = self.d.rep_of(dx);
        let ry = self.d.rep_of(dy);
        let c = cup11(&self.g, &rx, &ry, self.w.modulus())?;
        self.w
            .class_of(&c)
            .ok_or_else(|| Error::NotCocycle("cup class left the stable degree-2 part".into()))
    }

    /// (t, d, w) + (t′, d′, w′) = (t + t′, d + d′, w + w′ + (d ⌣ d′)).
    pub fn add(&self, x: &BrauerClass, y: &BrauerClass) -> Result<BrauerClass, Error> {
        self.check(x)?;
        self.check(y)?;
        let cup = self.cup_class(&x.d, &y.d)?;
        Ok(BrauerClass {
            t: self.t.add_classes(&x.t, &y.t),
            d: self.d.add_classes(&x.d, &y.d),
            w: self.w.add_classes(&self.w.add_classes(&x.w, &y.w), &cup),
            tag: x.tag,
        })
    }

    /// Additive inverse: solve (t,d,w) + (t′,d′,w′) = 0 for the primed class.
    pub fn neg(&self, x: &BrauerClass) -> Result<BrauerClass, Error> {
        self.check(x)?;
        let t = self.t.neg_class(&x.t);
        let d = self.d.neg_class(&x.d);
        let cup = self.cup_class(&x.d, &d)?;
        let w = self.w.neg_class(&self.w.add_classes(&x.w, &cup));
        let y = BrauerClass { t, d, w, tag: x.tag };
        debug_assert_eq!(self.add(x, &y).ok().as_ref(), Some(&self.zero()));
        Ok(y)
    }

    /// Conjugation on plain classes: pull every component back along the
    /// involution at the cochain level and negate. Involutivity is asserted
    /// on each call; additivity is checked on materialized groups in tests.
    pub fn hat_tau(&self, x: &BrauerClass) -> Result<BrauerClass, Error> {
        if self.flavor != Flavor::Complex {
            return Err(Error::MixedContext(format!(
                "conjugation acts on flavor br, this context is {}",
                self.flavor
            )));
        }
        self.check(x)?;
        let y = self.tau_raw(x)?;
        let back = self.tau_raw(&y)?;
        if back != *x {
            return Err(Error::NotWellDefined(
                "conjugation failed to square to the identity".into(),
            ));
        }
        Ok(y)
    }

    fn tau_raw(&self, x: &BrauerClass) -> Result<BrauerClass, Error> {
        let err = || Error::NotWellDefined("pullback of a cocycle must be a cocycle".into());
        let pull_neg = |nv: &Nerve, c: &[Int]| -> Vec<Int> {
            nv.tuples
                .iter()
                .map(|t| {
                    let rt = nv.rho_tuple(&self.g, t);
                    -c[nv.index_of(&rt).expect("the involution permutes the nerve")].clone()
                })
                .collect()
        };
        let t_c = pull_neg(&nerve(&self.g, 0)?, &self.t.rep_of(&x.t));
        let d_c = pull_neg(&nerve(&self.g, 1)?, &self.d.rep_of(&x.d));
        let w_c = pull_neg(&nerve(&self.g, 2)?, &self.w.rep_of(&x.w));
        Ok(BrauerClass {
            t: self.t.class_of(&t_c).ok_or_else(err)?,
            d: self.d.class_of(&d_c).ok_or_else(err)?,
            w: self.w.class_of(&w_c).ok_or_else(err)?,
            tag: x.tag,
        })
    }

    pub fn total_order(&self) -> Option<Int> {
        let t = self.t.group.order()?;
        let d = self.d.group.order()?;
        let w = self.w.group().order()?;
        Some(t * d * w)
    }

    /// Enumerates every class and reads the group structure off the table.
    pub fn materialize(&self) -> Result<MaterializedBrauer, Error> {
        let err = || Error::SizeExceeded(format!("total order above {MATERIALIZE_CAP}"));
        let ts = self.t.enumerate_classes(MATERIALIZE_CAP).ok_or_else(err)?;
        let ds = self.d.enumerate_classes(MATERIALIZE_CAP).ok_or_else(err)?;
        let ws = self.w.enumerate_classes(MATERIALIZE_CAP).ok_or_else(err)?;
        let n = (ts.len() as u64)
            .checked_mul(ds.len() as u64)
            .and_then(|v| v.checked_mul(ws.len() as u64))
            .ok_or_else(err)?;
        if n > MATERIALIZE_CAP {
            return Err(err());
        }
        let mut elements = Vec::with_capacity(n as usize);
        for t in &ts {
            for d in &ds {
                for w in &ws {
                    elements.push(BrauerClass {
                        t: t.clone(),
                        d: d.clone(),
                        w: w.clone(),
                        tag: self.tag,
                    });
                }
            }
        }
        let (group, spectrum) = self.table_structure(&elements)?;
        Ok(MaterializedBrauer { elements, group, spectrum })
    }

    fn add_with_cache(
        &self,
        x: &BrauerClass,
        y: &BrauerClass,
        cups: &mut HashMap<(Vec<Int>, Vec<Int>), Vec<Int>>,
    ) -> Result<BrauerClass, Error> {
        let key = (x.d.clone(), y.d.clone());
        if !cups.contains_key(&key) {
            let c = self.cup_class(&x.d, &y.d)?;
            cups.insert(key.clone(), c);
        }
        Ok(BrauerClass {
            t: self.t.add_classes(&x.t, &y.t),
            d: self.d.add_classes(&x.d, &y.d),
            w: self.w.add_classes(&self.w.add_classes(&x.w, &y.w), &cups[&key]),
            tag: x.tag,
        })
    }

    /// Verifies commutativity, closure and inverses pairwise (quadratic in
    /// the order), then recovers the abelian isomorphism type from the
    /// annihilator counts c_j = #{x : pʲ·x = 0} of each prime.
    fn table_structure(
        &self,
        elements: &[BrauerClass],
    ) -> Result<(FgGroup, BTreeMap<u64, usize>), Error> {
        let n = elements.len();
        let zero = self.zero();
        let index: HashMap<&BrauerClass, usize> =
            elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != n || !index.contains_key(&zero) {
            return Err(Error::NotWellDefined("materialized set is not reduced".into()));
        }
        let mut cups = HashMap::new();
        for i in 0..n {
            for j in i..n {
                let s = self.add_with_cache(&elements[i], &elements[j], &mut cups)?;
                if !index.contains_key(&s) {
                    return Err(Error::NotWellDefined(
                        "addition left the materialized set".into(),
                    ));
                }
                if i != j && s != self.add_with_cache(&elements[j], &elements[i], &mut cups)? {
                    return Err(Error::NotWellDefined("addition is not commutative".into()));
                }
            }
        }
        // The order loop doubles as the inverse check: its last step literally
        // computes (k−1)·x + x = 0.
        let mut spectrum: BTreeMap<u64, usize> = BTreeMap::new();
        let mut orders: Vec<u64> = Vec::with_capacity(n);
        for x in elements {
            let mut k = 1u64;
            let mut acc = x.clone();
            while acc != zero {
                acc = self.add_with_cache(&acc, x, &mut cups)?;
                k += 1;
                if k > n as u64 {
                    return Err(Error::NotWellDefined("an element has unbounded order".into()));
                }
            }
            *spectrum.entry(k).or_default() += 1;
            orders.push(k);
        }
        let total = n as u64;
        let mut primary: Vec<(Int, u32)> = Vec::new();
        for (p, _) in factorize(&Int::from(total)) {
            let p64: u64 = p.to_string().parse().expect("materialized order fits in u64");
            // s[j] = number of cyclic p-power factors with exponent ≥ j,
            // from the ratio of consecutive annihilator counts.
            let mut s: Vec<u32> = Vec::new();
            let mut c_prev = 1u64;
            let mut pj = 1u64;
            loop {
                pj = pj.checked_mul(p64).ok_or_else(|| {
                    Error::NotWellDefined("annihilator scan overflowed".into())
                })?;
                let c_j = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
                if c_j == c_prev {
                    break;
                }
                let ratio = c_j / c_prev;
                let mut s_j = 0u32;
                let mut r = ratio;
                while r > 1 && r % p64 == 0 {
                    r /= p64;
                    s_j += 1;
                }
                if r != 1 || c_j % c_prev != 0 {
                    return Err(Error::NotWellDefined(
                        "annihilator counts are not p-power ratios".into(),
                    ));
                }
                s.push(s_j);
                c_prev = c_j;
            }
            for j in 0..s.len() {
                let next = if j + 1 < s.len() { s[j + 1] } else { 0 };
                for _ in 0..(s[j] - next) {
                    primary.push((p.clone(), (j + 1) as u32));
                }
            }
        }
        let group = FgGroup::from_primary(0, primary);
        if group.order() != Some(Int::from(total)) {
            return Err(Error::NotWellDefined("order bookkeeping failed".into()));
        }
        Ok((group, spectrum))
    }
}

/// A fully enumerated Brauer group: every class, the verified abelian
/// isomorphism type, and the multiset of element orders.
pub struct MaterializedBrauer {
    pub elements: Vec<BrauerClass>,
    pub group: FgGroup,
    /// element order → multiplicity
    pub spectrum: BTreeMap<u64, usize>,
}

pub fn brauer_group(
    g: &FiniteRealGroupoid,
    flavor: Flavor,
    m: u64,
    tequiv: TEquivariance,
) -> Result<MaterializedBrauer, Error> {
    BrauerContext::new(g, flavor, m, tequiv)?.materialize()
}

/// The classes (0, 0, w): degree-2 circle cohomology itself, which is exactly
/// the subgroup of classes with trivial type and grading parts.
pub fn oriented_subgroup(g: &FiniteRealGroupoid, m: u64) -> Result<S1Cohomology, Error> {
    s1_cohomology(g, 2, true, Some(m))
}

/// The odd-torsion part of a finitely generated abelian group, canonical form.
pub fn odd_part(g: &FgGroup) -> FgGroup {
    let mut primary = Vec::new();
    for f in &g.invariant_factors {
        for (p, e) in factorize(f) {
            if p != Int::from(2) {
                primary.push((p, e));
            }
        }
    }
    FgGroup::from_primary(g.free_rank, primary)
}

/// Evidence that inverting 2 splits the plain group of a free involution into
/// the equivariant part and the part of the quotient groupoid.
#[derive(Debug)]
pub struct OddDecomposition {
    pub plain: FgGroup,
    pub equivariant: FgGroup,
    pub quotient: FgGroup,
    /// Odd torsion of the three groups above, same order.
    pub odd: [FgGroup; 3],
    pub agrees: bool,
}

impl OddDecomposition {
    pub fn report_lines(&self) -> Vec<String> {
        vec![
            format!("br(total)      = {} (odd part {})", self.plain, self.odd[0]),
            format!("brR(total)     = {} (odd part {})", self.equivariant, self.odd[1]),
            format!("br(quotient)   = {} (odd part {})", self.quotient, self.odd[2]),
            format!(
                "odd split {}: {} vs {} + {}",
                if self.agrees { "holds" } else { "FAILS" },
                self.odd[0],
                self.odd[1],
                self.odd[2]
            ),
        ]
    }
}

pub fn odd_decomposition_check(
    g: &FiniteRealGroupoid,
    m: u64,
) -> Result<OddDecomposition, Error> {
    let q = quotient_by_involution(g)?;
    let plain = brauer_group(g, Flavor::Complex, m, TEquivariance::Id)?;
    let equivariant = brauer_group(g, Flavor::Real, m, TEquivariance::Id)?;
    let quotient = brauer_group(&q, Flavor::Complex, m, TEquivariance::Id)?;
    let odd =
        [odd_part(&plain.group), odd_part(&equivariant.group), odd_part(&quotient.group)];
    let agrees = odd[0] == odd[1].direct_sum(&odd[2]);
    Ok(OddDecomposition {
        plain: plain.group,
        equivariant: equivariant.group,
        quotient: quotient.group,
        odd,
        agrees,
    })
}

/// For a trivial involution: the equivariant circle cohomology must agree
/// with plain ℤ₂ cohomology in degrees one and two, and all of its classes
/// must be 2-torsion. The order spectrum of the full group is reported but
/// not asserted: the degree-0 part contributes order eight under the default
/// invariance convention, and the report leaves that tension visible.
#[derive(Debug)]
pub struct TwoTorsionReport {
    /// Stabilized equivariant circle cohomology in degrees 1 and 2.
    pub stabilized: [FgGroup; 2],
    /// Plain ℤ₂ cohomology in degrees 1 and 2.
    pub plain_two: [FgGroup; 2],
    pub matches: bool,
    pub all_two_torsion: bool,
    /// Order spectrum of the materialized group, when small enough.
    pub spectrum: Option<BTreeMap<u64, usize>>,
}

pub fn two_torsion_check(g: &FiniteRealGroupoid, m: u64) -> Result<TwoTorsionReport, Error> {
    if !g.rho_is_trivial() {
        return Err(Error::NontrivialInvolution(
            "the two-torsion comparison is stated for trivial involutions".into(),
        ));
    }
    let stabilized = [
        s1_cohomology(g, 1, true, Some(m))?.group,
        s1_cohomology(g, 2, true, Some(m))?.group,
    ];
    let plain_two = [
        cohomology(g, 1, &Coefficient::z2(), false)?.group,
        cohomology(g, 2, &Coefficient::z2(), false)?.group,
    ];
    let two = Int::from(2);
    let grading = cohomology(g, 1, &Coefficient::z2(), true)?.group;
    let all_two_torsion = stabilized
        .iter()
        .chain(std::iter::once(&grading))
        .all(|h| h.free_rank == 0 && h.invariant_factors.iter().all(|f| *f == two));
    let matches = stabilized == plain_two;
    let spectrum = match brauer_group(g, Flavor::Real, m, TEquivariance::Id) {
        Ok(mat) => Some(mat.spectrum),
        Err(Error::SizeExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(TwoTorsionReport { stabilized, plain_two, matches, all_two_torsion, spectrum })
}

/// Evidence that the type part splits off: the section t ↦ (t, 0, 0) is a
/// homomorphism, projecting back is the identity, and the whole group is the
/// direct sum of the type part and the (d, w) subgroup.
pub struct SplitReport {
    pub total: FgGroup,
    pub t_part: FgGroup,
    pub dw_part: FgGroup,
    pub section_is_homomorphism: bool,
    pub projection_section_is_identity: bool,
    pub splits: bool,
}

pub fn split_sequence_check(g: &FiniteRealGroupoid, m: u64) -> Result<SplitReport, Error> {
    let ctx = BrauerContext::new(g, Flavor::Real, m, TEquivariance::Id)?;
    let mat = ctx.materialize()?;
    let zero = ctx.zero();
    let section = |t: &[Int]| BrauerClass {
        t: t.to_vec(),
        d: zero.d.clone(),
        w: zero.w.clone(),
        tag: zero.tag,
    };
    let ts = ctx
        .t
        .enumerate_classes(MATERIALIZE_CAP)
        .ok_or_else(|| Error::SizeExceeded("degree-0 part too large to enumerate".into()))?;
    let mut section_is_homomorphism = true;
    let mut projection_section_is_identity = true;
    for a in &ts {
        if section(a).t != *a {
            projection_section_is_identity = false;
        }
        for b in &ts {
            let lhs = ctx.add(&section(a), &section(b))?;
            if lhs != section(&ctx.t.add_classes(a, b)) {
                section_is_homomorphism = false;
            }
        }
    }
    let dw: Vec<BrauerClass> =
        mat.elements.iter().filter(|x| x.t == zero.t).cloned().collect();
    let (dw_part, _) = ctx.table_structure(&dw)?;
    let t_part = ctx.t.group.clone();
    let splits = mat.group == t_part.direct_sum(&dw_part);
    Ok(SplitReport {
        total: mat.group,
        t_part,
        dw_part,
        section_is_homomorphism,
        projection_section_is_identity,
        splits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{
        build_cyclic_product, build_double, build_point, build_product_s01,
    };
    use num_traits::{One, Zero};

    fn fg(factors: &[u64]) -> FgGroup {
        FgGroup {
            free_rank: 0,
            invariant_factors: factors.iter().map(|&k| Int::from(k)).collect(),
        }
    }

    fn z2() -> FiniteRealGroupoid {
        build_cyclic_product(&[2], false).unwrap()
    }

    fn z2z2() -> FiniteRealGroupoid {
        build_cyclic_product(&[2, 2], false).unwrap()
    }

    #[test]
    fn point_groups_match_the_classical_values() {
        let p = build_point();
        let real = brauer_group(&p, Flavor::Real, 4, TEquivariance::Id).unwrap();
        assert_eq!(real.group, fg(&[8]));
        let complex = brauer_group(&p, Flavor::Complex, 4, TEquivariance::Id).unwrap();
        assert_eq!(complex.group, fg(&[2]));
        let orth = brauer_group(&p, Flavor::Orthogonal, 4, TEquivariance::Id).unwrap();
        assert_eq!(orth.group, fg(&[8]));
    }

    #[test]
    fn point_addition_reduces_to_the_type_part() {
        let ctx = BrauerContext::new(&build_point(), Flavor::Real, 4, TEquivariance::Id).unwrap();
        let mat = ctx.materialize().unwrap();
        assert_eq!(mat.elements.len(), 8);
        for x in &mat.elements {
            assert_eq!(&ctx.add(x, &ctx.zero()).unwrap(), x);
            for y in &mat.elements {
                let s = ctx.add(x, y).unwrap();
                assert_eq!(s.t[0], (x.t[0].clone() + &y.t[0]) % 8);
            }
        }
    }

    #[test]
    fn classes_from_different_contexts_do_not_mix() {
        let a = BrauerContext::new(&build_point(), Flavor::Real, 4, TEquivariance::Id).unwrap();
        let b = BrauerContext::new(&z2(), Flavor::Real, 4, TEquivariance::Id).unwrap();
        let err = a.add(&a.zero(), &b.zero()).unwrap_err();
        assert!(matches!(err, Error::MixedContext(_)));
    }

    #[test]
    fn orthogonal_group_needs_a_trivial_involution() {
        let s01 = build_double(&build_point());
        match BrauerContext::new(&s01, Flavor::Orthogonal, 4, TEquivariance::Id) {
            Err(Error::NontrivialInvolution(_)) => {}
            Err(e) => panic!("wrong error: {e}"),
            Ok(_) => panic!("nontrivial involution must be rejected"),
        }
    }

    #[test]
    fn cup_twist_builds_a_cyclic_four_in_the_orthogonal_group() {
        let ctx = BrauerContext::new(&z2(), Flavor::Orthogonal, 4, TEquivariance::Id).unwrap();
        assert_eq!(ctx.d_group(), &fg(&[2]));
        assert_eq!(ctx.w_group(), &fg(&[2]));
        let gen = ctx
            .class(&ctx.zero().t, &[Int::one()], &ctx.zero().w)
            .unwrap();
        let twice = ctx.add(&gen, &gen).unwrap();
        assert!(twice.d.iter().all(|v| v.is_zero()));
        assert!(!twice.w.iter().all(|v| v.is_zero()), "the diagonal cup must be nonzero");
        let mat = ctx.materialize().unwrap();
        assert_eq!(mat.elements.len(), 32);
        assert_eq!(mat.group, fg(&[4, 8]));
    }

    #[test]
    fn real_group_of_one_loop_matches_the_orthogonal_one() {
        let g = z2();
        let real = brauer_group(&g, Flavor::Real, 4, TEquivariance::Id).unwrap();
        let orth = brauer_group(&g, Flavor::Orthogonal, 4, TEquivariance::Id).unwrap();
        assert_eq!(real.group, fg(&[4, 8]));
        assert_eq!(real.group, orth.group);
        assert_eq!(real.spectrum, orth.spectrum);
    }

    #[test]
    fn materialized_group_is_independent_of_the_base_modulus() {
        for flavor in [Flavor::Real, Flavor::Complex] {
            let a = brauer_group(&z2(), flavor, 4, TEquivariance::Id).unwrap();
            let b = brauer_group(&z2(), flavor, 8, TEquivariance::Id).unwrap();
            assert_eq!(a.group, b.group);
        }
    }

    #[test]
    fn addition_is_associative_where_the_twist_is_nontrivial() {
        let ctx = BrauerContext::new(&z2(), Flavor::Orthogonal, 4, TEquivariance::Id).unwrap();
        let mat = ctx.materialize().unwrap();
        for x in &mat.elements {
            for y in &mat.elements {
                let xy = ctx.add(x, y).unwrap();
                for z in mat.elements.iter().step_by(7) {
                    let l = ctx.add(&xy, z).unwrap();
                    let r = ctx.add(x, &ctx.add(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn negation_inverts_every_class() {
        let ctx = BrauerContext::new(&z2(), Flavor::Real, 4, TEquivariance::Id).unwrap();
        let mat = ctx.materialize().unwrap();
        for x in &mat.elements {
            let y = ctx.neg(x).unwrap();
            assert_eq!(ctx.add(x, &y).unwrap(), ctx.zero());
        }
    }

    #[test]
    fn conjugation_negates_classes_over_a_trivial_involution() {
        for g in [z2(), z2z2()] {
            let ctx = BrauerContext::new(&g, Flavor::Complex, 4, TEquivariance::Id).unwrap();
            let mat = ctx.materialize().unwrap();
            for x in &mat.elements {
                assert_eq!(ctx.hat_tau(x).unwrap(), ctx.neg(x).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism_on_the_doubled_sample() {
        let g = build_double(&build_cyclic_product(&[3, 3], false).unwrap());
        let ctx = BrauerContext::new(&g, Flavor::Complex, 6, TEquivariance::Id).unwrap();
        let mat = ctx.materialize().unwrap();
        assert_eq!(mat.elements.len(), 36);
        for x in &mat.elements {
            let tx = ctx.hat_tau(x).unwrap();
            assert_eq!(ctx.hat_tau(&tx).unwrap(), *x);
            for y in &mat.elements {
                let lhs = ctx.hat_tau(&ctx.add(x, y).unwrap()).unwrap();
                let rhs = ctx.add(&tx, &ctx.hat_tau(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conjugation_rejects_equivariant_contexts() {
        let ctx = BrauerContext::new(&z2(), Flavor::Real, 4, TEquivariance::Id).unwrap();
        let err = ctx.hat_tau(&ctx.zero()).unwrap_err();
        assert!(matches!(err, Error::MixedContext(_)));
    }

    #[test]
    fn odd_torsion_splits_for_free_involutions() {
        let dp = odd_decomposition_check(&build_double(&build_point()), 4).unwrap();
        assert!(dp.agrees);
        assert!(dp.odd.iter().all(|g| g.is_trivial()));

        let d33 =
            odd_decomposition_check(&build_double(&build_cyclic_product(&[3, 3], false).unwrap()), 6)
                .unwrap();
        assert!(d33.agrees);
        assert_eq!(d33.odd[0], fg(&[3, 3]));
        assert_eq!(d33.odd[1], fg(&[3]));
        assert_eq!(d33.odd[2], fg(&[3]));

        let p3 = odd_decomposition_check(
            &build_product_s01(&build_cyclic_product(&[3], false).unwrap()),
            6,
        )
        .unwrap();
        assert!(p3.agrees);
        assert!(p3.odd.iter().all(|g| g.is_trivial()));
    }

    #[test]
    fn odd_decomposition_rejects_fixed_points() {
        let err = odd_decomposition_check(&z2(), 4).unwrap_err();
        assert!(matches!(err, Error::NotFree(_)));
    }

    #[test]
    fn two_torsion_comparison_over_trivial_involutions() {
        for (g, h1, h2) in [
            (z2(), fg(&[2]), fg(&[2])),
            (build_cyclic_product(&[4], false).unwrap(), fg(&[2]), fg(&[2])),
            (z2z2(), fg(&[2, 2]), fg(&[2, 2, 2])),
        ] {
            let r = two_torsion_check(&g, 4).unwrap();
            assert!(r.matches, "stabilized/plain mismatch: {:?} vs {:?}", r.stabilized, r.plain_two);
            assert!(r.all_two_torsion);
            assert_eq!(r.stabilized, [h1, h2]);
            let spectrum = r.spectrum.unwrap();
            assert_eq!(spectrum.keys().max(), Some(&8), "type part keeps order eight visible");
        }
        let err = two_torsion_check(&build_double(&build_point()), 4).unwrap_err();
        assert!(matches!(err, Error::NontrivialInvolution(_)));
    }

    #[test]
    fn split_sequence_holds_on_samples() {
        let point = split_sequence_check(&build_point(), 4).unwrap();
        assert!(point.section_is_homomorphism && point.splits);
        assert_eq!(point.total, fg(&[8]));
        assert!(point.dw_part.is_trivial());

        let s01 = split_sequence_check(&build_double(&build_point()), 4).unwrap();
        assert!(s01.section_is_homomorphism && s01.projection_section_is_identity && s01.splits);
        assert_eq!(s01.total, fg(&[8]));

        let loop2 = split_sequence_check(&z2(), 4).unwrap();
        assert!(loop2.section_is_homomorphism && loop2.splits);
        assert_eq!(loop2.t_part, fg(&[8]));
        assert_eq!(loop2.dw_part, fg(&[4]));
        assert_eq!(loop2.total, fg(&[4, 8]));
    }

    #[test]
    fn oriented_subgroup_values() {
        assert!(oriented_subgroup(&build_point(), 4).unwrap().group.is_trivial());
        assert_eq!(oriented_subgroup(&z2(), 4).unwrap().group, fg(&[2]));
        let d33 = build_double(&build_cyclic_product(&[3, 3], false).unwrap());
        assert_eq!(odd_part(&oriented_subgroup(&d33, 6).unwrap().group), fg(&[3]));
    }

    #[test]
    fn doubled_point_keeps_order_eight_under_both_toggles() {
        let s01 = build_double(&build_point());
        for teq in [TEquivariance::Id, TEquivariance::Neg] {
            let mat = brauer_group(&s01, Flavor::Real, 4, teq).unwrap();
            assert_eq!(mat.group, fg(&[8]), "toggle {teq:?}");
        }
        // Over a point the toggles differ: negation collapses the type part.
        let neg = brauer_group(&build_point(), Flavor::Real, 4, TEquivariance::Neg).unwrap();
        assert_eq!(neg.group, fg(&[2]));
    }
}
