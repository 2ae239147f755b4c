//! Polynomials in the even bubbles `Δ_0, Δ_2, …`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::diagram::Bubbles;
use crate::scalar::Scalar;

/// A polynomial: monomial (exponent map) to coefficient.
pub type Poly = BTreeMap<Bubbles, Scalar>;

pub fn constant(c: Scalar) -> Poly {
    let mut p = Poly::new();
    if !c.is_zero() {
        p.insert(Bubbles::new(), c);
    }
    p
}

pub fn one() -> Poly {
    constant(Scalar::one())
}

pub fn var(k: u32) -> Poly {
    let mut mono = Bubbles::new();
    mono.insert(k, 1);
    let mut p = Poly::new();
    p.insert(mono, Scalar::one());
    p
}

pub fn mono_mul(a: &Bubbles, b: &Bubbles) -> Bubbles {
    let mut out = a.clone();
    for (k, e) in b {
        *out.entry(*k).or_insert(0) += e;
    }
    out
}

pub fn add_term(p: &mut Poly, mono: Bubbles, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.entry(mono) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub fn add_scaled(p: &mut Poly, q: &Poly, c: &Scalar) {
    for (mono, x) in q {
        add_term(p, mono.clone(), x * c);
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(&mut out, mono_mul(ma, mb), ca * cb);
        }
    }
    out
}

pub fn pow(a: &Poly, e: u32) -> Poly {
    let mut acc = one();
    for _ in 0..e {
        acc = mul(&acc, a);
    }
    acc
}

/// The constant value if the polynomial has no variables.
pub fn as_constant(p: &Poly) -> Option<Scalar> {
    match p.len() {
        0 => Some(Scalar::zero()),
        1 => p.get(&Bubbles::new()).cloned(),
        _ => None,
    }
}

pub fn format(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (mono, c) in p {
        let vars: Vec<String> = mono
            .iter()
            .map(|(k, e)| if *e == 1 { format!("Δ{k}") } else { format!("Δ{k}^{e}") })
            .collect();
        let coef = crate::scalar::format(c);
        parts.push(if vars.is_empty() { coef } else { format!("{coef}*{}", vars.join("*")) });
    }
    parts.join(" + ")
}
