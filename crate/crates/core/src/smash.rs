//! The smash product B#KG and the double smash product B#KG#KG*.

use crate::action::ModuleAlgebra;
use crate::error::{Error, Result};
use crate::groupoid::Mor;
use crate::walg::{Element, FinAlgebra, WeakHopf};

/// A smash algebra together with the data needed to read its basis back.
///
/// B#KG has basis `b_i # u_g` at index `i·|G| + g`; B#KG#KG* has basis
/// `b_i # u_g # ρ_h` at index `(i·|G| + g)·|G| + h`.
#[derive(Clone, Debug)]
pub struct SmashAlgebra {
    pub algebra: FinAlgebra,
    pub b_dim: usize,
    pub n_mor: usize,
    pub double: bool,
    /// The objects of the groupoid, i.e. the support of `1_KG`.
    pub objects: Vec<Mor>,
    /// Identifies the module algebra both smash products were built from.
    pub origin: String,
}

impl SmashAlgebra {
    pub fn index(&self, b: usize, g: Mor) -> usize {
        debug_assert!(!self.double);
        b * self.n_mor + g
    }

    pub fn index3(&self, b: usize, g: Mor, h: Mor) -> usize {
        debug_assert!(self.double);
        (b * self.n_mor + g) * self.n_mor + h
    }

    /// `(b, g)` for B#KG.
    pub fn split(&self, i: usize) -> (usize, Mor) {
        (i / self.n_mor, i % self.n_mor)
    }

    /// `(b, g, h)` for B#KG#KG*.
    pub fn split3(&self, i: usize) -> (usize, Mor, Mor) {
        let (bg, h) = (i / self.n_mor, i % self.n_mor);
        (bg / self.n_mor, bg % self.n_mor, h)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

fn origin_of(ma: &ModuleAlgebra) -> String {
    format!("{}:{}:{}", ma.b.basis().join(","), ma.groupoid.len(), ma.field())
}

fn label2(ma: &ModuleAlgebra, b: usize, g: Mor) -> String {
    format!("{}#u_{}", ma.b.label(b), ma.groupoid.label(g))
}

/// B#KG: `(a # u_σ)(b # u_τ) = a(σ·b) # u_{στ}`, zero when `(σ, τ) ∉ G₂`.
/// The unit field is set to whatever unit the algebra happens to have.
pub fn smash_product(ma: &ModuleAlgebra) -> SmashAlgebra {
    let f = ma.field();
    let g = &ma.groupoid;
    let b = &ma.b;
    let n = g.len();
    let dim = b.dim() * n;
    let labels = (0..dim).map(|i| label2(ma, i / n, i % n)).collect();
    let mut algebra = FinAlgebra::from_rule(f, labels, None, |x, y| {
        let (a, s) = (x / n, x % n);
        let (bb, t) = (y / n, y % n);
        let Some(st) = g.mul(s, t) else {
            return Element::zero();
        };
        let coeffs = b.mul(&b.basis_element(a), ma.action.on_basis(s, bb));
        coeffs.map_basis(f, |k| k * n + st)
    })
    .expect("table matches basis");
    let unit = algebra.find_unit();
    algebra.set_unit(unit);
    SmashAlgebra {
        algebra,
        b_dim: b.dim(),
        n_mor: n,
        double: false,
        objects: g.objects().to_vec(),
        origin: origin_of(ma),
    }
}

/// `ρ_h ⇀ (b # u_l) = b # u_l ρ_h(u_l)`, i.e. keep the terms with `l = h`.
pub fn harpoon(sm: &SmashAlgebra, h: Mor, z: &Element) -> Element {
    let mut out = Element::zero();
    for (i, c) in z.terms() {
        if sm.split(i).1 == h {
            out.add_term(sm.algebra.field(), i, c);
        }
    }
    out
}

/// B#KG#KG* = (B#KG)#KG* with KG* acting on B#KG by `⇀`:
/// `(a#u_m#ρ_n)(b#u_s#ρ_t) = Σ_{Δ(ρ_n) = ρ_p ⊗ ρ_q} (a#u_m)(ρ_p ⇀ b#u_s) # ρ_q ρ_t`.
/// For the groupoid dual this is `a(m·b) # u_{ms} # ρ_t` when
/// `(m, s), (s, t) ∈ G₂` and `st = n`, and zero otherwise.
pub fn double_smash(ma: &ModuleAlgebra, kg_star: &WeakHopf) -> Result<SmashAlgebra> {
    let f = ma.field();
    let g = &ma.groupoid;
    let n = g.len();
    if kg_star.algebra.dim() != n || kg_star.field() != f {
        return Err(Error::MismatchedParents(
            "KG* does not match the groupoid of the module algebra".into(),
        ));
    }
    let inner = smash_product(ma);
    let dim = ma.b.dim() * n * n;
    let labels = (0..dim)
        .map(|i| {
            let (bg, h) = (i / n, i % n);
            format!("{}#rho_{}", label2(ma, bg / n, bg % n), g.label(h))
        })
        .collect();
    let mut algebra = FinAlgebra::from_rule(f, labels, None, |x, y| {
        let (am, nn) = (x / n, x % n);
        let (bs, t) = (y / n, y % n);
        let left = inner.algebra.basis_element(am);
        let right = inner.algebra.basis_element(bs);
        let mut out = Element::zero();
        for (p, q, c) in &kg_star.co.delta[nn] {
            let moved = harpoon(&inner, *p, &right);
            if moved.is_zero() {
                continue;
            }
            let first = inner.algebra.mul(&left, &moved);
            let second = kg_star.algebra.product(*q, t);
            for (i, ci) in first.terms() {
                for (j, cj) in second.terms() {
                    out.add_term(f, i * n + j, &f.mul(c, &f.mul(ci, cj)));
                }
            }
        }
        out
    })?;
    let unit = algebra.find_unit();
    algebra.set_unit(unit);
    Ok(SmashAlgebra {
        algebra,
        b_dim: ma.b.dim(),
        n_mor: n,
        double: true,
        objects: g.objects().to_vec(),
        origin: inner.origin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::library;
    use crate::walg::dual_weak_hopf;

    fn ma(name: &str) -> ModuleAlgebra {
        library::builtin(name).unwrap().module_algebra().unwrap()
    }

    #[test]
    fn smash_of_i2_swap_multiplies_through_the_action() {
        let ma = ma("i2-swap");
        let s = smash_product(&ma);
        let a = &s.algebra;
        assert_eq!(a.dim(), 8);
        let x = a.element_of("e1#u_g").unwrap();
        let y = a.element_of("e2#u_gi").unwrap();
        // e1 (g·e2) # u_{g gi} = e1 # u_x
        assert_eq!(a.format(&a.mul(&x, &y)), "e1#u_x");
        assert!(a.mul(&x, &x).is_zero());
        assert!(a.check_associativity().holds);
    }

    #[test]
    fn smash_of_trivial_action_is_kg() {
        let ma = ma("z3-trivial");
        let s = smash_product(&ma);
        assert_eq!(s.algebra.table(), ma.kg.algebra.table());
        assert!(s.algebra.unit().is_some());
    }

    #[test]
    fn left_units_act_on_matching_components() {
        let ma = ma("i2-swap");
        let s = smash_product(&ma);
        let f = ma.field();
        let mut left = Element::zero();
        for &e in ma.groupoid.objects() {
            let i = ma.unit_image(e).unwrap();
            left = left.plus(f, &i.map_basis(f, |k| s.index(k, e)));
        }
        let g = ma.groupoid.id("g").unwrap();
        // e1 lies in B_{s(g)}
        let z = Element::basis(f, s.index(0, g));
        assert_eq!(s.algebra.mul(&left, &z), z);
    }

    #[test]
    fn harpoon_keeps_matching_morphisms() {
        let ma = ma("i2-swap");
        let s = smash_product(&ma);
        let f = ma.field();
        let g = ma.groupoid.id("g").unwrap();
        let z = Element::basis(f, s.index(1, g)).plus(f, &Element::basis(f, s.index(0, 0)));
        assert_eq!(harpoon(&s, g, &z), Element::basis(f, s.index(1, g)));
    }

    #[test]
    fn double_smash_is_associative() {
        for name in ["z2-trivial", "i2-swap", "z2-swap"] {
            let ma = ma(name);
            let star = dual_weak_hopf(&ma.kg, &ma.groupoid).unwrap();
            let d = double_smash(&ma, &star).unwrap();
            assert!(d.algebra.check_associativity().holds, "{name}");
        }
    }

    #[test]
    fn double_smash_product_formula() {
        let ma = ma("i2-swap");
        let star = dual_weak_hopf(&ma.kg, &ma.groupoid).unwrap();
        let d = double_smash(&ma, &star).unwrap();
        let a = &d.algebra;
        // (e1#u_g#rho_g)(e2#u_y#rho_y): m = g, s = y, t = y, st = y ≠ g
        let l = a.element_of("e1#u_g#rho_g").unwrap();
        assert!(a.mul(&l, &a.element_of("e2#u_y#rho_y").unwrap()).is_zero());
        // (e1#u_g#rho_g)(e2#u_gi#rho_g): st = gi g = y ≠ g
        assert!(a.mul(&l, &a.element_of("e2#u_gi#rho_g").unwrap()).is_zero());
        // (e1#u_g#rho_y)(e2#u_y#rho_y): st = y, e1 (g·e2) = e1
        let u = a.element_of("e1#u_g#rho_y").unwrap();
        let v = a.element_of("e2#u_y#rho_y").unwrap();
        assert_eq!(a.format(&a.mul(&u, &v)), "e1#u_g#rho_y");
        // (e1#u_x#rho_g)(e1#u_x#rho_g): s = x, t = g, st = g, m s = x
        let r = a.element_of("e1#u_x#rho_g").unwrap();
        assert_eq!(a.format(&a.mul(&r, &r)), "e1#u_x#rho_g");
    }

    /// Letting `ρ_n` itself (instead of its coproduct) act on `b # u_s` and
    /// then multiplying by `ρ_n ρ_t` gives a rule that is nonzero only when
    /// `s = n = t`; that rule is not associative even for Z/2 acting trivially.
    #[test]
    fn product_without_coproduct_is_not_associative() {
        let ma = ma("z2-trivial");
        let g = &ma.groupoid;
        let f = ma.field();
        let n = g.len();
        let labels = (0..n * n).map(|i| format!("{}", i)).collect();
        let alt = FinAlgebra::from_rule(f, labels, None, |x, y| {
            let (m, h) = (x / n, x % n);
            let (s, t) = (y / n, y % n);
            match g.mul(m, s) {
                Some(ms) if s == h && h == t => Element::basis(f, ms * n + t),
                _ => Element::zero(),
            }
        })
        .unwrap();
        assert!(!alt.check_associativity().holds);
    }
}
