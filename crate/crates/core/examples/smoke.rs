//! End-to-end pass through the public API: build Clifford models, classify
//! them, round-trip the text format, and compute a cohomology group.

use graded_brauer::algebra::{algebra_from_text, algebra_to_text, graded_tensor, make_clifford};
use graded_brauer::cohomology::{cohomology, Coefficient};
use graded_brauer::groupoid::build_cyclic_product;
use graded_brauer::point::{classify, real_form_invariants, type_add};

fn main() {
    for (p, q) in [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (1, 1)] {
        let a = make_clifford(p, q).unwrap();
        let ty = classify(&a).unwrap();
        println!("clifford({p},{q}) -> type {ty}");
        assert_eq!(ty.z8() as usize, (q + 8 - p) % 8);
    }

    let a = make_clifford(0, 1).unwrap();
    let b = make_clifford(2, 0).unwrap();
    let t = classify(&graded_tensor(&a, &b)).unwrap();
    let s = type_add(classify(&a).unwrap(), classify(&b).unwrap());
    assert_eq!(t, s);
    println!("tensor coherence: type {t}");

    let text = algebra_to_text(&a);
    let back = algebra_from_text(&text).unwrap();
    assert_eq!(classify(&back).unwrap(), classify(&a).unwrap());
    println!("text round-trip: {} bytes", text.len());

    let rf = real_form_invariants(&make_clifford(0, 2).unwrap());
    println!(
        "fixed algebra of clifford(0,2): dim {}, center {}, {}",
        rf.real_dim, rf.center_dim, rf.idempotent_profile
    );

    let g = build_cyclic_product(&[2], false).unwrap();
    let h = cohomology(&g, 2, &Coefficient::mu(4), true).unwrap();
    println!("HR^2(Z2, mu_4) = {}", h.group);
}
