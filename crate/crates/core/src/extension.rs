//! μ_m-central extensions of a finite groupoid with involution, kept in
//! cocycle normal form: total arrows are pairs (g, λ) with λ ∈ ℤ/m written
//! additively, composition (g,λ)(h,μ) = (gh, λ+μ+ω(g,h)), involution
//! (g,λ) ↦ (ρg, −λ), grading δ(g,λ) = δ(g). The pair (δ, [ω]) classifies the
//! extension, and the graded tensor product adds those pairs under the same
//! cup-twisted law as Brauer classes.

use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::cohomology::{cohomology, cup11, Coefficient, CohomologyGroup};
use crate::error::Error;
use crate::groupoid::{nerve, Arrow, FiniteRealGroupoid, Nerve};
use crate::smith::Int;

/// A central extension in normal form. `delta` is indexed by base arrows,
/// `omega` by composable pairs in level-2 nerve order; both are reduced.
pub struct CentralExtension {
    base: FiniteRealGroupoid,
    pub m: u64,
    pub delta: Vec<Int>,
    pub omega: Vec<Int>,
    /// The total groupoid, arrows ordered fiber-fastest: (g, λ) ↦ g·m + λ.
    pub total: FiniteRealGroupoid,
    nerve2: Nerve,
}

fn reduce_mod(v: &[Int], m: u64) -> Vec<Int> {
    let mm = Int::from(m);
    v.iter().map(|x| x.mod_floor(&mm)).collect()
}

fn fiber(x: &Int, m: u64) -> u64 {
    x.mod_floor(&Int::from(m)).to_u64().expect("reduced fiber fits in u64")
}

/// Builds and validates the total groupoid of the pair (δ, ω). The cocycle
/// and reality conditions are checked first and name the failing tuple.
pub fn build_extension(
    base: &FiniteRealGroupoid,
    m: u64,
    delta: &[Int],
    omega: &[Int],
) -> Result<CentralExtension, Error> {
    if m == 0 || m % 2 != 0 {
        return Err(Error::OddOrder(m));
    }
    let nerve2 = nerve(base, 2)?;
    if delta.len() != base.n_arrows() || omega.len() != nerve2.len() {
        return Err(Error::Shape(format!(
            "expected {} grading and {} twist entries, got {} and {}",
            base.n_arrows(),
            nerve2.len(),
            delta.len(),
            omega.len()
        )));
    }
    let delta = reduce_mod(delta, 2);
    let omega = reduce_mod(omega, m);
    let mm = Int::from(m);
    let name = |a: usize| base.arrows[a].name.clone();

    for (i, t) in nerve2.tuples.iter().enumerate() {
        let (a, b) = (t[0], t[1]);
        let ab = base.compose(a, b).expect("nerve pairs compose");
        if (delta[a].clone() + &delta[b] - &delta[ab]).mod_floor(&Int::from(2)) != Int::zero() {
            return Err(Error::NotCocycle(format!(
                "grading is not multiplicative at ({}, {})",
                name(a),
                name(b)
            )));
        }
        let (ra, rb) = (base.rho_arr(a), base.rho_arr(b));
        let ri = nerve2.index_of(&[ra, rb]).expect("the involution permutes the nerve");
        if (omega[ri].clone() + &omega[i]).mod_floor(&mm) != Int::zero() {
            return Err(Error::NotReal(format!(
                "twist fails conjugation-equivariance at ({}, {})",
                name(a),
                name(b)
            )));
        }
    }
    for a in 0..base.n_arrows() {
        if delta[base.rho_arr(a)] != delta[a] {
            return Err(Error::NotReal(format!("grading is not involution-invariant at {}", name(a))));
        }
    }
    let nerve3 = nerve(base, 3)?;
    let w = |a: usize, b: usize| omega[nerve2.index_of(&[a, b]).unwrap()].clone();
    for t in &nerve3.tuples {
        let (a, b, c) = (t[0], t[1], t[2]);
        let ab = base.compose(a, b).unwrap();
        let bc = base.compose(b, c).unwrap();
        let d = (w(b, c) - w(ab, c) + w(a, bc) - w(a, b)).mod_floor(&mm);
        if d != Int::zero() {
            return Err(Error::NotCocycle(format!(
                "twist fails the cocycle identity at ({}, {}, {})",
                name(a),
                name(b),
                name(c)
            )));
        }
    }

    // Total groupoid tables. The unit over x is (u_x, −ω(u,u)): the cocycle
    // identity forces ω(u,h) = ω(g,u) = ω(u,u), which makes it neutral.
    let n = base.n_arrows();
    let mu = m as usize;
    let mut arrows = Vec::with_capacity(n * mu);
    for g in 0..n {
        for l in 0..m {
            arrows.push(Arrow {
                name: format!("{}|{}", base.arrows[g].name, l),
                src: base.src(g),
                tgt: base.tgt(g),
            });
        }
    }
    let idx = |g: usize, l: u64| g * mu + (l as usize);
    let mut compose = std::collections::HashMap::new();
    for t in &nerve2.tuples {
        let (a, b) = (t[0], t[1]);
        let ab = base.compose(a, b).unwrap();
        let wab = fiber(&w(a, b), m);
        for l in 0..m {
            for p in 0..m {
                compose.insert((idx(a, l), idx(b, p)), idx(ab, (l + p + wab) % m));
            }
        }
    }
    let unit_fiber = |x: usize| {
        let u = base.unit(x);
        (m - fiber(&w(u, u), m)) % m
    };
    let mut inv = Vec::with_capacity(n * mu);
    for g in 0..n {
        let gi = base.inv(g);
        let defect = fiber(&w(g, gi), m);
        let target = unit_fiber(base.tgt(g));
        for l in 0..m {
            inv.push(idx(gi, (2 * m + target - l - defect) % m));
        }
    }
    let mut rho_arr = Vec::with_capacity(n * mu);
    for g in 0..n {
        for l in 0..m {
            rho_arr.push(idx(base.rho_arr(g), (m - l) % m));
        }
    }
    let total = FiniteRealGroupoid::new(
        base.objects.clone(),
        arrows,
        compose,
        inv,
        (0..base.n_objects()).map(|x| base.rho_obj(x)).collect(),
        rho_arr,
    )?;
    Ok(CentralExtension { base: base.clone(), m, delta, omega, total, nerve2 })
}

/// The trivial extension: direct product with the fiber, zero grading.
pub fn trivial_extension(base: &FiniteRealGroupoid, m: u64) -> Result<CentralExtension, Error> {
    let nerve2 = nerve(base, 2)?;
    build_extension(base, m, &vec![Int::zero(); base.n_arrows()], &vec![Int::zero(); nerve2.len()])
}

/// The cohomology groups a classifying pair lives in, at fixed fiber order.
pub struct DdTheory {
    base: FiniteRealGroupoid,
    pub m: u64,
    pub grading: CohomologyGroup,
    pub twist: CohomologyGroup,
}

impl DdTheory {
    pub fn new(g: &FiniteRealGroupoid, m: u64) -> Result<DdTheory, Error> {
        if m == 0 || m % 2 != 0 {
            return Err(Error::OddOrder(m));
        }
        Ok(DdTheory {
            base: g.clone(),
            m,
            grading: cohomology(g, 1, &Coefficient::z2(), true)?,
            twist: cohomology(g, 2, &Coefficient::mu(m), true)?,
        })
    }

    fn check(&self, e: &CentralExtension) -> Result<(), Error> {
        if self.m != e.m
            || self.base.objects != e.base.objects
            || self.base.arrows != e.base.arrows
        {
            return Err(Error::MixedContext(
                "extension and theory live over different bases".into(),
            ));
        }
        Ok(())
    }

    /// Semidirect addition of classifying pairs: the degree-2 parts add up to
    /// the cup product of the degree-1 representatives.
    pub fn add(&self, x: &DdClass, y: &DdClass) -> Result<DdClass, Error> {
        let rx = self.grading.rep_of(&x.delta);
        let ry = self.grading.rep_of(&y.delta);
        let cup = self
            .twist
            .class_of(&cup11(&self.base, &rx, &ry, self.m)?)
            .ok_or_else(|| Error::NotCocycle("cup failed to define a class".into()))?;
        Ok(DdClass {
            delta: self.grading.add_classes(&x.delta, &y.delta),
            omega: self.twist.add_classes(&self.twist.add_classes(&x.omega, &y.omega), &cup),
        })
    }
}

/// Class coordinates of the classifying pair (δ, [ω]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdClass {
    pub delta: Vec<Int>,
    pub omega: Vec<Int>,
}

impl DdClass {
    pub fn is_zero(&self) -> bool {
        self.delta.iter().all(|v| v.is_zero()) && self.omega.iter().all(|v| v.is_zero())
    }
}

/// A certified trivialization: dθ = ω and dε = δ, both verified exactly.
pub struct Trivialization {
    /// Conjugation-equivariant fiber values per base arrow.
    pub theta: Vec<Int>,
    /// Mod-2 potential per base object bounding the grading.
    pub delta_bound: Vec<Int>,
}

impl CentralExtension {
    pub fn base(&self) -> &FiniteRealGroupoid {
        &self.base
    }

    /// Total-arrow index of the canonical section value (g, 0).
    pub fn section(&self, g: usize) -> usize {
        g * self.m as usize
    }

    /// Composable pairs of base arrows in twist-table order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        self.nerve2.tuples.iter().map(|t| (t[0], t[1])).collect()
    }

    /// (base arrow, fiber) of a total arrow.
    pub fn split_arrow(&self, a: usize) -> (usize, u64) {
        (a / self.m as usize, (a % self.m as usize) as u64)
    }

    /// Reads the twist off an arbitrary section `s` (one total arrow over
    /// each base arrow): the fiber defect of s(g)s(h) against s(gh).
    pub fn section_twist(&self, s: &[usize]) -> Result<Vec<Int>, Error> {
        if s.len() != self.base.n_arrows()
            || s.iter().enumerate().any(|(g, &sg)| self.split_arrow(sg).0 != g)
        {
            return Err(Error::Shape("section must pick one lift per base arrow".into()));
        }
        let mm = Int::from(self.m);
        Ok(self
            .nerve2
            .tuples
            .iter()
            .map(|t| {
                let ab = self.base.compose(t[0], t[1]).unwrap();
                let c = self.total.compose(s[t[0]], s[t[1]]).expect("lifts compose");
                let lam = Int::from(self.split_arrow(c).1) - Int::from(self.split_arrow(s[ab]).1);
                lam.mod_floor(&mm)
            })
            .collect())
    }

    /// The classifying pair, read from the canonical section through the
    /// total composition table and reduced to classes.
    pub fn dd_class(&self, th: &DdTheory) -> Result<DdClass, Error> {
        let s: Vec<usize> = (0..self.base.n_arrows()).map(|g| self.section(g)).collect();
        self.dd_class_with_section(&s, th)
    }

    /// The classifying pair read off any section; non-equivariant sections
    /// produce a twist outside the Real complex and are rejected.
    pub fn dd_class_with_section(&self, s: &[usize], th: &DdTheory) -> Result<DdClass, Error> {
        th.check(self)?;
        let omega = self.section_twist(s)?;
        let delta = th
            .grading
            .class_of(&self.delta)
            .ok_or_else(|| Error::NotCocycle("grading is not a cocycle".into()))?;
        let omega = th
            .twist
            .class_of(&omega)
            .ok_or_else(|| Error::NotReal("section twist is not a Real cocycle".into()))?;
        Ok(DdClass { delta, omega })
    }

    /// Graded tensor product over the same base: fiber product of the totals
    /// modulo the antidiagonal fiber. Commuting the odd parts of the factors
    /// past each other costs the sign (m/2)·δ₂(g)·δ₁(h), which is verified
    /// below against compositions read from the two total tables.
    pub fn tensor(&self, other: &CentralExtension) -> Result<CentralExtension, Error> {
        if self.m != other.m
            || self.base.objects != other.base.objects
            || self.base.arrows != other.base.arrows
        {
            return Err(Error::MixedContext("tensor factors live over different bases".into()));
        }
        let m = self.m;
        let half = Int::from(m / 2);
        let mm = Int::from(m);
        let delta: Vec<Int> = self
            .delta
            .iter()
            .zip(&other.delta)
            .map(|(a, b)| (a.clone() + b).mod_floor(&Int::from(2)))
            .collect();
        let omega: Vec<Int> = self
            .nerve2
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let koszul = half.clone() * &other.delta[t[0]] * &self.delta[t[1]];
                (self.omega[i].clone() + &other.omega[i] + koszul).mod_floor(&mm)
            })
            .collect();
        let product = build_extension(&self.base, m, &delta, &omega)?;
        // Cross-check the normal form against the explicit quotient model:
        // compose the canonical lifts in each factor's total table, add the
        // fibers (the antidiagonal identification), add the sign.
        for (i, t) in self.nerve2.tuples.iter().enumerate() {
            let c1 = self.total.compose(self.section(t[0]), self.section(t[1])).unwrap();
            let c2 = other.total.compose(other.section(t[0]), other.section(t[1])).unwrap();
            let sign = (m / 2) * fiber(&(other.delta[t[0]].clone() * &self.delta[t[1]]), 2);
            let lam = (self.split_arrow(c1).1 + other.split_arrow(c2).1 + sign) % m;
            if lam != fiber(&product.omega[i], m) {
                return Err(Error::NotWellDefined(
                    "tensor normal form disagrees with the fiber-product model".into(),
                ));
            }
        }
        Ok(product)
    }

    /// True exactly when both classifying classes vanish; then a trivializing
    /// pair of cochains is produced and certified by recomputing dθ and dε.
    pub fn is_trivial(&self, th: &DdTheory) -> Result<(bool, Option<Trivialization>), Error> {
        let dd = self.dd_class(th)?;
        if !dd.is_zero() {
            return Ok((false, None));
        }
        let witness_err =
            || Error::NotWellDefined("a trivial class must bound, but no witness was found".into());
        let theta = th.twist.coboundary_witness(&self.omega).ok_or_else(witness_err)?;
        let delta_bound = th.grading.coboundary_witness(&self.delta).ok_or_else(witness_err)?;
        let mm = Int::from(self.m);
        for (i, t) in self.nerve2.tuples.iter().enumerate() {
            let ab = self.base.compose(t[0], t[1]).unwrap();
            let d = (theta[t[1]].clone() - &theta[ab] + &theta[t[0]]).mod_floor(&mm);
            if d != self.omega[i] {
                return Err(Error::NotWellDefined("twist witness failed verification".into()));
            }
        }
        let two = Int::from(2);
        for g in 0..self.base.n_arrows() {
            let d = (delta_bound[self.base.src(g)].clone() - &delta_bound[self.base.tgt(g)])
                .mod_floor(&two);
            if d != self.delta[g] {
                return Err(Error::NotWellDefined("grading witness failed verification".into()));
            }
        }
        Ok((true, Some(Trivialization { theta, delta_bound })))
    }
}
