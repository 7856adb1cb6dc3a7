//! Small dg categories used throughout the tests and the acceptance suite.

use crate::dgcat::{CategoryBuilder, DgCategory};
use crate::scalar::Field;

/// One object with endomorphisms `k·id`.
pub fn k(f: Field) -> DgCategory {
    CategoryBuilder::new(f).object("*").build().unwrap()
}

/// Two objects with `Hom(1,2) = k` in degree `n`.
pub fn s_n(f: Field, n: i32) -> DgCategory {
    CategoryBuilder::new(f)
        .object("1")
        .object("2")
        .morphism("f", n, "1", "2")
        .build()
        .unwrap()
}

/// Two objects with `Hom(1,2)` the cone `a ↦ b`, `|a| = n − 1`.
pub fn d_n(f: Field, n: i32) -> DgCategory {
    CategoryBuilder::new(f)
        .object("1")
        .object("2")
        .morphism("a", n - 1, "1", "2")
        .morphism("b", n, "1", "2")
        .d("a", &[("b", 1)])
        .build()
        .unwrap()
}

/// Path category of `1 → 2 → 3` with arrows `f`, `g` and composite `gf`.
pub fn a2(f: Field) -> DgCategory {
    CategoryBuilder::new(f)
        .object("1")
        .object("2")
        .object("3")
        .morphism("f", 0, "1", "2")
        .morphism("g", 0, "2", "3")
        .morphism("gf", 0, "1", "3")
        .mu("f", "g", &[("gf", 1)])
        .build()
        .unwrap()
}

/// `k[e]/e²` with `|e| = deg` and zero differential.
pub fn k_eps(f: Field, deg: i32) -> DgCategory {
    CategoryBuilder::new(f)
        .object("*")
        .morphism("e", deg, "*", "*")
        .build()
        .unwrap()
}

/// `k ⊕ k·x`, `|x| = −1`, `x² = 0`, `dx = 0`.
pub fn k_x(f: Field) -> DgCategory {
    CategoryBuilder::new(f)
        .object("*")
        .morphism("x", -1, "*", "*")
        .build()
        .unwrap()
}

/// `f: 1 → 2`, `g: 2 → 1`, `gf = g∘f`, and `h` of degree −1 with `dh = gf`.
pub fn fgh(f: Field) -> DgCategory {
    CategoryBuilder::new(f)
        .object("1")
        .object("2")
        .morphism("f", 0, "1", "2")
        .morphism("g", 0, "2", "1")
        .morphism("gf", 0, "1", "1")
        .morphism("h", -1, "1", "1")
        .d("h", &[("gf", 1)])
        .mu("f", "g", &[("gf", 1)])
        .build()
        .unwrap()
}
