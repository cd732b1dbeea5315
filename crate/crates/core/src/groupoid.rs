//! Finite groupoids carrying an involution, with nerve enumeration.
//!
//! Arrows and objects are interned integer ids; all enumeration orders are
//! stable so downstream matrices are reproducible bit for bit. `compose(a, b)`
//! means `a∘b` and requires `src(a) = tgt(b)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug)]
pub struct FiniteRealGroupoid {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    compose: HashMap<(usize, usize), usize>,
    inv: Vec<usize>,
    /// unit arrow at each object, inferred during validation
    units: Vec<usize>,
    rho_obj: Vec<usize>,
    rho_arr: Vec<usize>,
}

impl FiniteRealGroupoid {
    /// Validates everything; `compose` keys are `(a, b)` with `src(a) = tgt(b)`.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: HashMap<(usize, usize), usize>,
        inv: Vec<usize>,
        rho_obj: Vec<usize>,
        rho_arr: Vec<usize>,
    ) -> Result<FiniteRealGroupoid, Error> {
        let units = vec![0; objects.len()];
        let mut g = FiniteRealGroupoid { objects, arrows, compose, inv, units, rho_obj, rho_arr };
        g.units = g.infer_units()?;
        g.validate()?;
        Ok(g)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, a: usize) -> usize {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.arrows[a].tgt
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.units[x]
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.units[self.arrows[a].src] == a
    }

    pub fn rho_obj(&self, x: usize) -> usize {
        self.rho_obj[x]
    }

    pub fn rho_arr(&self, a: usize) -> usize {
        self.rho_arr[a]
    }

    pub fn rho_is_trivial(&self) -> bool {
        self.rho_obj.iter().enumerate().all(|(i, &j)| i == j)
            && self.rho_arr.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    fn infer_units(&self) -> Result<Vec<usize>, Error> {
        let mut units = Vec::with_capacity(self.objects.len());
        for x in 0..self.objects.len() {
            let mut found = None;
            'cand: for u in 0..self.arrows.len() {
                if self.arrows[u].src != x || self.arrows[u].tgt != x {
                    continue;
                }
                if self.compose.get(&(u, u)) != Some(&u) {
                    continue;
                }
                for a in 0..self.arrows.len() {
                    if self.arrows[a].tgt == x && self.compose.get(&(u, a)) != Some(&a) {
                        continue 'cand;
                    }
                    if self.arrows[a].src == x && self.compose.get(&(a, u)) != Some(&a) {
                        continue 'cand;
                    }
                }
                found = Some(u);
                break;
            }
            match found {
                Some(u) => units.push(u),
                None => {
                    return Err(Error::InvalidGroupoid(format!(
                        "no unit arrow at object {}",
                        self.objects[x]
                    )))
                }
            }
        }
        Ok(units)
    }

    /// Category axioms, inverses, and the involution axioms; first violation
    /// is reported in the error message.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.arrows.len();
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        for a in &self.arrows {
            if a.src >= self.objects.len() || a.tgt >= self.objects.len() {
                return bad(format!("arrow {} has out-of-range endpoints", a.name));
            }
        }
        if self.inv.len() != n || self.rho_arr.len() != n || self.rho_obj.len() != self.objects.len()
        {
            return bad("structure map length mismatch".into());
        }
        // compose defined exactly on composable pairs, with matching endpoints
        for a in 0..n {
            for b in 0..n {
                let composable = self.arrows[a].src == self.arrows[b].tgt;
                match self.compose.get(&(a, b)) {
                    Some(&c) if composable => {
                        if self.arrows[c].src != self.arrows[b].src
                            || self.arrows[c].tgt != self.arrows[a].tgt
                        {
                            return bad(format!(
                                "compose {} {} has wrong endpoints",
                                self.arrows[a].name, self.arrows[b].name
                            ));
                        }
                    }
                    Some(_) => {
                        return bad(format!(
                            "compose defined on non-composable pair {} {}",
                            self.arrows[a].name, self.arrows[b].name
                        ))
                    }
                    None if composable => {
                        return bad(format!(
                            "missing composition {} {}",
                            self.arrows[a].name, self.arrows[b].name
                        ))
                    }
                    None => {}
                }
            }
        }
        // associativity on all composable triples
        for a in 0..n {
            for b in 0..n {
                let Some(&ab) = self.compose.get(&(a, b)) else { continue };
                for c in 0..n {
                    let Some(&bc) = self.compose.get(&(b, c)) else { continue };
                    if self.compose.get(&(ab, c)) != self.compose.get(&(a, bc)) {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            self.arrows[a].name, self.arrows[b].name, self.arrows[c].name
                        ));
                    }
                }
            }
        }
        // inverses
        for a in 0..n {
            let ai = self.inv[a];
            if ai >= n
                || self.arrows[ai].src != self.arrows[a].tgt
                || self.arrows[ai].tgt != self.arrows[a].src
            {
                return bad(format!("inv of {} has wrong endpoints", self.arrows[a].name));
            }
            if self.compose.get(&(a, ai)) != Some(&self.units[self.arrows[a].tgt])
                || self.compose.get(&(ai, a)) != Some(&self.units[self.arrows[a].src])
            {
                return bad(format!("inv of {} is not two-sided", self.arrows[a].name));
            }
        }
        // involution: automorphism of order ≤ 2
        for x in 0..self.objects.len() {
            if self.rho_obj[self.rho_obj[x]] != x {
                return bad(format!("rho not involutive on object {}", self.objects[x]));
            }
        }
        for a in 0..n {
            let ra = self.rho_arr[a];
            if self.rho_arr[ra] != a {
                return bad(format!("rho not involutive on arrow {}", self.arrows[a].name));
            }
            if self.arrows[ra].src != self.rho_obj[self.arrows[a].src]
                || self.arrows[ra].tgt != self.rho_obj[self.arrows[a].tgt]
            {
                return bad(format!("rho of {} has wrong endpoints", self.arrows[a].name));
            }
        }
        for (&(a, b), &c) in &self.compose {
            if self.compose.get(&(self.rho_arr[a], self.rho_arr[b])) != Some(&self.rho_arr[c]) {
                return bad(format!(
                    "rho is not multiplicative at ({}, {})",
                    self.arrows[a].name, self.arrows[b].name
                ));
            }
        }
        Ok(())
    }
}

fn mixed_radix(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        let mut next = Vec::new();
        for v in &out {
            for d in 0..o {
                let mut w = v.clone();
                w.push(d);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// One-object groupoid for the product of cyclic groups `⊕ ℤ/orders[i]`;
/// `negate` makes the involution g ↦ −g, otherwise it is the identity.
pub fn build_cyclic_product(orders: &[u64], negate: bool) -> Result<FiniteRealGroupoid, Error> {
    if orders.iter().any(|&o| o == 0) {
        return Err(Error::InvalidGroupoid("cyclic factor of order 0".into()));
    }
    let elts = mixed_radix(orders);
    let index: HashMap<&Vec<u64>, usize> = elts.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let name = |e: &[u64]| {
        let parts: Vec<String> = e.iter().map(|d| d.to_string()).collect();
        format!("g{}", parts.join("_"))
    };
    let arrows: Vec<Arrow> =
        elts.iter().map(|e| Arrow { name: name(e), src: 0, tgt: 0 }).collect();
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter().zip(b).zip(orders).map(|((x, y), o)| (x + y) % o).collect()
    };
    let mut compose = HashMap::new();
    for (i, a) in elts.iter().enumerate() {
        for (j, b) in elts.iter().enumerate() {
            compose.insert((i, j), index[&add(a, b)]);
        }
    }
    let neg = |a: &[u64]| -> Vec<u64> { a.iter().zip(orders).map(|(x, o)| (o - x) % o).collect() };
    let inv: Vec<usize> = elts.iter().map(|e| index[&neg(e)]).collect();
    let rho_arr: Vec<usize> = if negate { inv.clone() } else { (0..elts.len()).collect() };
    FiniteRealGroupoid::new(vec!["pt".into()], arrows, compose, inv, vec![0], rho_arr)
}

pub fn build_point() -> FiniteRealGroupoid {
    build_cyclic_product(&[1], false).expect("point groupoid is valid")
}

/// Pair groupoid on k objects: one arrow `a{i}_{j}: j → i` for every pair.
/// An optional object involution induces the arrow involution.
pub fn build_pair(k: usize, obj_involution: Option<Vec<usize>>) -> Result<FiniteRealGroupoid, Error> {
    if k == 0 {
        return Err(Error::InvalidGroupoid("pair groupoid needs at least one object".into()));
    }
    let objects: Vec<String> = (0..k).map(|i| format!("o{i}")).collect();
    let mut arrows = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            arrows.push(Arrow { name: format!("a{i}_{j}"), src: j, tgt: i });
        }
    }
    let id = |i: usize, j: usize| i * k + j;
    let mut compose = HashMap::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                compose.insert((id(i, j), id(j, l)), id(i, l));
            }
        }
    }
    let inv: Vec<usize> = (0..k * k).map(|a| id(a % k, a / k)).collect();
    let sigma = obj_involution.unwrap_or_else(|| (0..k).collect());
    if sigma.len() != k {
        return Err(Error::InvalidGroupoid("object involution length mismatch".into()));
    }
    let rho_obj = sigma.clone();
    let rho_arr: Vec<usize> = (0..k * k).map(|a| id(sigma[a / k], sigma[a % k])).collect();
    FiniteRealGroupoid::new(objects, arrows, compose, inv, rho_obj, rho_arr)
}

/// Disjoint union G ⊔ G with the involution swapping the copies.
/// Copy c ∈ {0,1} of object x is index `c·|objects| + x`, same for arrows.
pub fn build_double(g: &FiniteRealGroupoid) -> FiniteRealGroupoid {
    double_with(g, false)
}

/// G × S^{0,1}: two copies of G with rho(g, ±1) = (ρ_G g, ∓1).
pub fn build_product_s01(g: &FiniteRealGroupoid) -> FiniteRealGroupoid {
    double_with(g, true)
}

fn double_with(g: &FiniteRealGroupoid, apply_rho: bool) -> FiniteRealGroupoid {
    let no = g.n_objects();
    let na = g.n_arrows();
    let suffix = ["p", "m"];
    let mut objects = Vec::with_capacity(2 * no);
    let mut arrows = Vec::with_capacity(2 * na);
    for c in 0..2 {
        for x in 0..no {
            objects.push(format!("{}.{}", g.objects[x], suffix[c]));
        }
    }
    for c in 0..2 {
        for a in 0..na {
            arrows.push(Arrow {
                name: format!("{}.{}", g.arrows[a].name, suffix[c]),
                src: c * no + g.arrows[a].src,
                tgt: c * no + g.arrows[a].tgt,
            });
        }
    }
    let mut compose = HashMap::new();
    for c in 0..2 {
        for a in 0..na {
            for b in 0..na {
                if let Some(ab) = g.compose(a, b) {
                    compose.insert((c * na + a, c * na + b), c * na + ab);
                }
            }
        }
    }
    let mut inv = Vec::with_capacity(2 * na);
    for c in 0..2 {
        for a in 0..na {
            inv.push(c * na + g.inv(a));
        }
    }
    let swap_obj = |x: usize| (x + no) % (2 * no);
    let swap_arr = |a: usize| (a + na) % (2 * na);
    let rho_obj: Vec<usize> = (0..2 * no)
        .map(|x| swap_obj((x / no) * no + if apply_rho { g.rho_obj(x % no) } else { x % no }))
        .collect();
    let rho_arr: Vec<usize> = (0..2 * na)
        .map(|a| swap_arr((a / na) * na + if apply_rho { g.rho_arr(a % na) } else { a % na }))
        .collect();
    FiniteRealGroupoid::new(objects, arrows, compose, inv, rho_obj, rho_arr)
        .expect("doubling a valid groupoid stays valid")
}

/// Transformation groupoid X ⋊ G for a left action of the product of cyclic
/// groups on a finite set: arrow (g, x): x → g·x. `action[g][x] = g·x` indexed
/// by the same element order as [`build_cyclic_product`]. The involutions must
/// be compatible: rho_x(g·x) = rho_g(g)·rho_x(x) (checked by validation).
pub fn build_action(
    points: &[String],
    orders: &[u64],
    action: &[Vec<usize>],
    negate: bool,
    rho_points: Option<Vec<usize>>,
) -> Result<FiniteRealGroupoid, Error> {
    let grp = build_cyclic_product(orders, negate)?;
    let m = grp.n_arrows();
    let np = points.len();
    if action.len() != m || action.iter().any(|row| row.len() != np) {
        return Err(Error::InvalidGroupoid("action table shape mismatch".into()));
    }
    let mut arrows = Vec::with_capacity(m * np);
    for g in 0..m {
        for x in 0..np {
            arrows.push(Arrow {
                name: format!("{}@{}", grp.arrows[g].name, points[x]),
                src: x,
                tgt: action[g][x],
            });
        }
    }
    let id = |g: usize, x: usize| g * np + x;
    let mut compose = HashMap::new();
    for g in 0..m {
        for h in 0..m {
            let gh = grp.compose(g, h).unwrap();
            for x in 0..np {
                // (g, h·x) ∘ (h, x) = (gh, x)
                compose.insert((id(g, action[h][x]), id(h, x)), id(gh, x));
            }
        }
    }
    let mut inv = vec![0; m * np];
    for g in 0..m {
        for x in 0..np {
            inv[id(g, x)] = id(grp.inv(g), action[g][x]);
        }
    }
    let rho_x = rho_points.unwrap_or_else(|| (0..np).collect());
    if rho_x.len() != np {
        return Err(Error::InvalidGroupoid("point involution length mismatch".into()));
    }
    let mut rho_arr = vec![0; m * np];
    for g in 0..m {
        for x in 0..np {
            rho_arr[id(g, x)] = id(grp.rho_arr(g), rho_x[x]);
        }
    }
    FiniteRealGroupoid::new(points.to_vec(), arrows, compose, inv, rho_x, rho_arr)
}

/// Product with the pair groupoid on k objects (a Morita inflation).
/// Object (x, i) has index `x·k + i`; arrow (g, a_{i,j}) index `g·k² + i·k + j`.
pub fn inflate(g: &FiniteRealGroupoid, k: usize) -> FiniteRealGroupoid {
    let no = g.n_objects();
    let na = g.n_arrows();
    let mut objects = Vec::with_capacity(no * k);
    for x in 0..no {
        for i in 0..k {
            objects.push(format!("{}:{}", g.objects[x], i));
        }
    }
    let mut arrows = Vec::with_capacity(na * k * k);
    for a in 0..na {
        for i in 0..k {
            for j in 0..k {
                arrows.push(Arrow {
                    name: format!("{}:{}_{}", g.arrows[a].name, i, j),
                    src: g.arrows[a].src * k + j,
                    tgt: g.arrows[a].tgt * k + i,
                });
            }
        }
    }
    let id = |a: usize, i: usize, j: usize| a * k * k + i * k + j;
    let mut compose = HashMap::new();
    for a in 0..na {
        for b in 0..na {
            if let Some(ab) = g.compose(a, b) {
                for i in 0..k {
                    for j in 0..k {
                        for l in 0..k {
                            compose.insert((id(a, i, j), id(b, j, l)), id(ab, i, l));
                        }
                    }
                }
            }
        }
    }
    let mut inv = vec![0; na * k * k];
    let mut rho_arr = vec![0; na * k * k];
    for a in 0..na {
        for i in 0..k {
            for j in 0..k {
                inv[id(a, i, j)] = id(g.inv(a), j, i);
                rho_arr[id(a, i, j)] = id(g.rho_arr(a), i, j);
            }
        }
    }
    let rho_obj: Vec<usize> = (0..no * k).map(|x| g.rho_obj(x / k) * k + x % k).collect();
    FiniteRealGroupoid::new(objects, arrows, compose, inv, rho_obj, rho_arr)
        .expect("inflation of a valid groupoid stays valid")
}

/// Identify every object and arrow with its image under rho. Requires the
/// involution to act freely.
pub fn quotient_by_involution(g: &FiniteRealGroupoid) -> Result<FiniteRealGroupoid, Error> {
    for x in 0..g.n_objects() {
        if g.rho_obj(x) == x {
            return Err(Error::NotFree(format!("object {}", g.objects[x])));
        }
    }
    for a in 0..g.n_arrows() {
        if g.rho_arr(a) == a {
            return Err(Error::NotFree(format!("arrow {}", g.arrows[a].name)));
        }
    }
    // orbit representative = smaller index
    let obj_rep: Vec<usize> = (0..g.n_objects()).map(|x| x.min(g.rho_obj(x))).collect();
    let arr_rep: Vec<usize> = (0..g.n_arrows()).map(|a| a.min(g.rho_arr(a))).collect();
    let kept_obj: Vec<usize> = (0..g.n_objects()).filter(|&x| obj_rep[x] == x).collect();
    let kept_arr: Vec<usize> = (0..g.n_arrows()).filter(|&a| arr_rep[a] == a).collect();
    let obj_pos: HashMap<usize, usize> = kept_obj.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let arr_pos: HashMap<usize, usize> = kept_arr.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let objects: Vec<String> = kept_obj.iter().map(|&x| format!("[{}]", g.objects[x])).collect();
    let arrows: Vec<Arrow> = kept_arr
        .iter()
        .map(|&a| Arrow {
            name: format!("[{}]", g.arrows[a].name),
            src: obj_pos[&obj_rep[g.src(a)]],
            tgt: obj_pos[&obj_rep[g.tgt(a)]],
        })
        .collect();
    let mut compose = HashMap::new();
    for (qi, &a) in kept_arr.iter().enumerate() {
        for (qj, &b) in kept_arr.iter().enumerate() {
            // compose the unique composable lifts, if any
            let b2 = if g.src(a) == g.tgt(b) {
                Some(b)
            } else if g.src(a) == g.tgt(g.rho_arr(b)) {
                Some(g.rho_arr(b))
            } else {
                None
            };
            if let Some(b2) = b2 {
                let c = g.compose(a, b2).expect("lifted pair must compose");
                compose.insert((qi, qj), arr_pos[&arr_rep[c]]);
            }
        }
    }
    let inv: Vec<usize> = kept_arr.iter().map(|&a| arr_pos[&arr_rep[g.inv(a)]]).collect();
    let rho_obj: Vec<usize> = (0..objects.len()).collect();
    let rho_arr: Vec<usize> = (0..arrows.len()).collect();
    FiniteRealGroupoid::new(objects, arrows, compose, inv, rho_obj, rho_arr)
}

pub const DEFAULT_NERVE_LEVEL_CAP: usize = 3;

/// Composable n-tuples in lexicographic order. Level 0 lists object ids.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub level: usize,
    /// arrow-id tuples for level ≥ 1, singleton object ids for level 0
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Nerve {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Entrywise involution on tuples; permutes the nerve level.
    pub fn rho_tuple(&self, g: &FiniteRealGroupoid, t: &[usize]) -> Vec<usize> {
        if self.level == 0 {
            vec![g.rho_obj(t[0])]
        } else {
            t.iter().map(|&a| g.rho_arr(a)).collect()
        }
    }
}

pub fn nerve(g: &FiniteRealGroupoid, n: usize) -> Result<Nerve, Error> {
    nerve_with_cap(g, n, DEFAULT_NERVE_LEVEL_CAP.max(level_cap_from_env()))
}

fn level_cap_from_env() -> usize {
    std::env::var("GBRAUER_NERVE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

pub fn nerve_with_cap(g: &FiniteRealGroupoid, n: usize, cap: usize) -> Result<Nerve, Error> {
    if n > cap {
        return Err(Error::SizeExceeded(format!("nerve level {n} above the cap {cap}")));
    }
    let tuples: Vec<Vec<usize>> = if n == 0 {
        (0..g.n_objects()).map(|x| vec![x]).collect()
    } else {
        let mut cur: Vec<Vec<usize>> = (0..g.n_arrows()).map(|a| vec![a]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for t in &cur {
                let obj = g.src(*t.last().unwrap());
                for b in 0..g.n_arrows() {
                    if g.tgt(b) == obj {
                        let mut u = t.clone();
                        u.push(b);
                        next.push(u);
                    }
                }
            }
            cur = next;
        }
        cur
    };
    let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(Nerve { level: n, tuples, index })
}

/// `face(i, t)` of an (n+1)-tuple: drop-first, middle compositions, drop-last.
/// Faces of a 1-tuple (g) are the level-0 tuples [src g], [tgt g].
pub fn face(g: &FiniteRealGroupoid, t: &[usize], i: usize) -> Vec<usize> {
    let n1 = t.len();
    assert!(i <= n1);
    if n1 == 1 {
        return if i == 0 { vec![g.src(t[0])] } else { vec![g.tgt(t[0])] };
    }
    if i == 0 {
        t[1..].to_vec()
    } else if i == n1 {
        t[..n1 - 1].to_vec()
    } else {
        let mut u = Vec::with_capacity(n1 - 1);
        u.extend_from_slice(&t[..i - 1]);
        u.push(g.compose(t[i - 1], t[i]).expect("nerve tuples compose"));
        u.extend_from_slice(&t[i + 1..]);
        u
    }
}

/// Independent composable-tuple count via powers of the arrow-count matrix.
pub fn composable_count(g: &FiniteRealGroupoid, n: usize) -> u64 {
    if n == 0 {
        return g.n_objects() as u64;
    }
    let k = g.n_objects();
    let mut adj = vec![vec![0u64; k]; k];
    for a in &g.arrows {
        adj[a.tgt][a.src] += 1;
    }
    let mut acc = adj.clone();
    for _ in 1..n {
        let mut next = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    next[i][l] += acc[i][j] * adj[j][l];
                }
            }
        }
        acc = next;
    }
    acc.iter().flatten().sum()
}

/// Line-oriented text format. Sections: `objects:`, `arrows: name src tgt`,
/// `compose: a b -> c`, `inv: a -> b`, `rho: x -> y` (objects and arrows);
/// `#` starts a comment. A file with no rho lines gets the identity involution.
pub fn parse_groupoid(text: &str) -> Result<FiniteRealGroupoid, Error> {
    let mut objects: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_names: HashMap<String, usize> = HashMap::new();
    let mut object_names: HashMap<String, usize> = HashMap::new();
    let mut compose_lines: Vec<(String, String, String)> = Vec::new();
    let mut inv_lines: Vec<(String, String)> = Vec::new();
    let mut rho_lines: Vec<(String, String)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {}", ln + 1, msg));
        let (head, rest) = line.split_once(':').ok_or_else(|| err("missing section header"))?;
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match head.trim() {
            "objects" => {
                for t in toks {
                    if object_names.insert(t.to_string(), objects.len()).is_some() {
                        return Err(err("duplicate object"));
                    }
                    objects.push(t.to_string());
                }
            }
            "arrows" => {
                let [name, src, tgt] = toks[..] else {
                    return Err(err("expected: arrows: name src tgt"));
                };
                let &s = object_names.get(src).ok_or_else(|| err("unknown source object"))?;
                let &t = object_names.get(tgt).ok_or_else(|| err("unknown target object"))?;
                if arrow_names.insert(name.to_string(), arrows.len()).is_some() {
                    return Err(err("duplicate arrow"));
                }
                arrows.push(Arrow { name: name.to_string(), src: s, tgt: t });
            }
            "compose" => {
                let [a, b, arr, c] = toks[..] else {
                    return Err(err("expected: compose: a b -> c"));
                };
                if arr != "->" {
                    return Err(err("expected '->'"));
                }
                compose_lines.push((a.to_string(), b.to_string(), c.to_string()));
            }
            "inv" => {
                let [a, arr, b] = toks[..] else {
                    return Err(err("expected: inv: a -> b"));
                };
                if arr != "->" {
                    return Err(err("expected '->'"));
                }
                inv_lines.push((a.to_string(), b.to_string()));
            }
            "rho" => {
                let [a, arr, b] = toks[..] else {
                    return Err(err("expected: rho: x -> y"));
                };
                if arr != "->" {
                    return Err(err("expected '->'"));
                }
                rho_lines.push((a.to_string(), b.to_string()));
            }
            other => return Err(err(&format!("unknown section '{other}'"))),
        }
    }

    let arrow_of = |n: &str| {
        arrow_names.get(n).copied().ok_or_else(|| Error::Parse(format!("unknown arrow '{n}'")))
    };
    let mut compose = HashMap::new();
    for (a, b, c) in &compose_lines {
        if compose.insert((arrow_of(a)?, arrow_of(b)?), arrow_of(c)?).is_some() {
            return Err(Error::Parse(format!("duplicate composition {a} {b}")));
        }
    }
    let mut inv = vec![usize::MAX; arrows.len()];
    for (a, b) in &inv_lines {
        inv[arrow_of(a)?] = arrow_of(b)?;
    }
    if let Some(a) = inv.iter().position(|&x| x == usize::MAX) {
        return Err(Error::Parse(format!("missing inv for arrow '{}'", arrows[a].name)));
    }
    let (mut rho_obj, mut rho_arr);
    if rho_lines.is_empty() {
        rho_obj = (0..objects.len()).collect::<Vec<_>>();
        rho_arr = (0..arrows.len()).collect::<Vec<_>>();
    } else {
        rho_obj = vec![usize::MAX; objects.len()];
        rho_arr = vec![usize::MAX; arrows.len()];
        for (x, y) in &rho_lines {
            if let (Some(&i), Some(&j)) = (object_names.get(x), object_names.get(y)) {
                rho_obj[i] = j;
            } else if let (Some(&i), Some(&j)) = (arrow_names.get(x), arrow_names.get(y)) {
                rho_arr[i] = j;
            } else {
                return Err(Error::Parse(format!("rho line mixes kinds or names unknown: {x} -> {y}")));
            }
        }
        if let Some(x) = rho_obj.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Parse(format!("missing rho for object '{}'", objects[x])));
        }
        if let Some(a) = rho_arr.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Parse(format!("missing rho for arrow '{}'", arrows[a].name)));
        }
    }
    FiniteRealGroupoid::new(objects, arrows, compose, inv, rho_obj, rho_arr)
}

pub fn serialize_groupoid(g: &FiniteRealGroupoid) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "objects: {}", g.objects.join(" "));
    for a in &g.arrows {
        let _ = writeln!(s, "arrows: {} {} {}", a.name, g.objects[a.src], g.objects[a.tgt]);
    }
    let mut pairs: Vec<(usize, usize)> = g.compose.keys().copied().collect();
    pairs.sort_unstable();
    for (a, b) in pairs {
        let c = g.compose[&(a, b)];
        let _ = writeln!(
            s,
            "compose: {} {} -> {}",
            g.arrows[a].name, g.arrows[b].name, g.arrows[c].name
        );
    }
    for a in 0..g.n_arrows() {
        let _ = writeln!(s, "inv: {} -> {}", g.arrows[a].name, g.arrows[g.inv(a)].name);
    }
    for x in 0..g.n_objects() {
        let _ = writeln!(s, "rho: {} -> {}", g.objects[x], g.objects[g.rho_obj(x)]);
    }
    for a in 0..g.n_arrows() {
        let _ = writeln!(s, "rho: {} -> {}", g.arrows[a].name, g.arrows[g.rho_arr(a)].name);
    }
    s
}
