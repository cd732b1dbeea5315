//! Smith normal form over the integers with unimodular transform tracking.
//!
//! `U · M · V = S` with `S` diagonal, entries nonnegative, each dividing the
//! next. Pivoting always selects a minimal-absolute-value entry, which keeps
//! intermediate entries small on the sparse differential matrices this crate
//! produces. Tracking of `U`, `V` and their inverses is opt-in because the
//! large kernel computations only need `U`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::mat::Mat;

pub type Int = BigInt;
pub type IntMat = Mat<Int>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrackOpts {
    pub u: bool,
    pub v: bool,
    pub u_inv: bool,
    pub v_inv: bool,
}

impl TrackOpts {
    pub const NONE: TrackOpts = TrackOpts { u: false, v: false, u_inv: false, v_inv: false };
    pub const U_ONLY: TrackOpts = TrackOpts { u: true, v: false, u_inv: false, v_inv: false };
    pub const UV: TrackOpts = TrackOpts { u: true, v: true, u_inv: false, v_inv: false };
    pub const ALL: TrackOpts = TrackOpts { u: true, v: true, u_inv: true, v_inv: true };
}

#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// Diagonal of S, length min(rows, cols).
    pub diag: Vec<Int>,
    pub rank: usize,
    u: Option<IntMat>,
    v: Option<IntMat>,
    u_inv: Option<IntMat>,
    v_inv: Option<IntMat>,
}

impl Smith {
    pub fn new(m: &IntMat) -> Smith {
        Smith::with_tracking(m, TrackOpts::ALL)
    }

    pub fn with_tracking(m: &IntMat, track: TrackOpts) -> Smith {
        let mut st = State::new(m.clone(), track);
        st.reduce();
        let min_dim = st.m.rows().min(st.m.cols());
        let diag: Vec<Int> = (0..min_dim).map(|i| st.m[(i, i)].clone()).collect();
        let rank = diag.iter().take_while(|d| !d.is_zero()).count();
        debug_assert!(diag.iter().skip(rank).all(|d| d.is_zero()));
        for i in 1..rank {
            debug_assert!(diag[i].is_multiple_of(&diag[i - 1]), "divisibility chain broken");
        }
        Smith {
            rows: st.m.rows(),
            cols: st.m.cols(),
            diag,
            rank,
            u: st.u,
            v: st.v,
            u_inv: st.u_inv,
            v_inv: st.v_inv,
        }
    }

    pub fn u(&self) -> &IntMat {
        self.u.as_ref().expect("U was not tracked")
    }

    pub fn v(&self) -> &IntMat {
        self.v.as_ref().expect("V was not tracked")
    }

    pub fn u_inv(&self) -> &IntMat {
        self.u_inv.as_ref().expect("U_inv was not tracked")
    }

    pub fn v_inv(&self) -> &IntMat {
        self.v_inv.as_ref().expect("V_inv was not tracked")
    }

    /// The diagonal matrix S with the same shape as the input.
    pub fn s_matrix(&self) -> IntMat {
        let mut s = Mat::zero(self.rows, self.cols);
        for (i, d) in self.diag.iter().enumerate() {
            s[(i, i)] = d.clone();
        }
        s
    }
}

/// Convenience wrapper returning `(S, U, V)` with `U·M·V = S`.
pub fn smith_normal_form(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let s = Smith::with_tracking(m, TrackOpts::UV);
    (s.s_matrix(), s.u().clone(), s.v().clone())
}

struct State {
    m: IntMat,
    u: Option<IntMat>,
    v: Option<IntMat>,
    u_inv: Option<IntMat>,
    v_inv: Option<IntMat>,
}

impl State {
    fn new(m: IntMat, track: TrackOpts) -> State {
        let (r, c) = (m.rows(), m.cols());
        State {
            m,
            u: track.u.then(|| Mat::identity(r)),
            v: track.v.then(|| Mat::identity(c)),
            u_inv: track.u_inv.then(|| Mat::identity(r)),
            v_inv: track.v_inv.then(|| Mat::identity(c)),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(a, b);
        }
    }

    /// row[dst] += c·row[src]
    fn row_add(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        self.m.row_add(dst, src, c);
        if let Some(u) = &mut self.u {
            u.row_add(dst, src, c);
        }
        if let Some(ui) = &mut self.u_inv {
            // right-multiplying by the inverse op: col[src] -= c·col[dst]
            ui.col_add(src, dst, &-c.clone());
        }
    }

    /// col[dst] += c·col[src]
    fn col_add(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        self.m.col_add(dst, src, c);
        if let Some(v) = &mut self.v {
            v.col_add(dst, src, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_add(src, dst, &-c.clone());
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    fn reduce(&mut self) {
        let n = self.m.rows().min(self.m.cols());
        for k in 0..n {
            if !self.pivot_cycle(k) {
                break;
            }
        }
        // Normalize signs.
        for k in 0..n {
            if self.m[(k, k)].is_negative() {
                self.negate_row(k);
            }
        }
    }

    /// Produce the final pivot at (k,k): clear its row and column, then make
    /// it divide every entry of the trailing block. Returns false when the
    /// trailing block is zero.
    fn pivot_cycle(&mut self, k: usize) -> bool {
        let rows = self.m.rows();
        let cols = self.m.cols();
        loop {
            if !self.place_pivot(k) {
                return false;
            }
            'clear: loop {
                // Clear column k below the pivot.
                let mut i = k + 1;
                while i < rows {
                    if !self.m[(i, k)].is_zero() {
                        let (q, r) = self.m[(i, k)].div_rem(&self.m[(k, k)]);
                        self.row_add(i, k, &-q);
                        if !r.is_zero() {
                            // Remainder is strictly smaller: promote it.
                            self.swap_rows(k, i);
                            continue;
                        }
                    }
                    i += 1;
                }
                // Clear row k right of the pivot.
                let mut j = k + 1;
                while j < cols {
                    if !self.m[(k, j)].is_zero() {
                        let (q, r) = self.m[(k, j)].div_rem(&self.m[(k, k)]);
                        self.col_add(j, k, &-q);
                        if !r.is_zero() {
                            self.swap_cols(k, j);
                            // Column ops may have refilled column k.
                            continue 'clear;
                        }
                    }
                    j += 1;
                }
                if (k + 1..rows).all(|i| self.m[(i, k)].is_zero()) {
                    break;
                }
            }
            // Enforce divisibility of the remaining block by the pivot.
            match self.find_nondivisible(k) {
                Some((i, _)) => self.row_add(k, i, &Int::from(1)),
                None => return true,
            }
        }
    }

    /// Move a minimal-absolute-value nonzero entry of the trailing block to (k,k).
    fn place_pivot(&mut self, k: usize) -> bool {
        let rows = self.m.rows();
        let cols = self.m.cols();
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in k..rows {
            for j in k..cols {
                if self.m[(i, j)].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => self.m[(i, j)].magnitude() < self.m[(bi, bj)].magnitude(),
                };
                if better {
                    best = Some((i, j));
                    // a unit pivot cannot be beaten
                    if self.m[(i, j)].magnitude().is_one() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((i, j)) = best else { return false };
        self.swap_rows(k, i);
        self.swap_cols(k, j);
        true
    }

    fn find_nondivisible(&self, k: usize) -> Option<(usize, usize)> {
        let d = &self.m[(k, k)];
        for i in k + 1..self.m.rows() {
            for j in k + 1..self.m.cols() {
                if !self.m[(i, j)].is_multiple_of(d) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}
