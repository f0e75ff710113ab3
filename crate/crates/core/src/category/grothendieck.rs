use super::Functor;

/// A morphism `g: d → d'` of the base and an object over one of its ends
/// admitting no (co)cartesian lift of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub base_morphism: String,
    pub object: String,
}

/// `f: c → c'` is cartesian if every `h: c'' → c'` with `F(h) = F(f)∘k`
/// factors as `h = f∘l` with `F(l) = k` for exactly one `l`.
pub fn is_cartesian_morphism(func: &Functor, f: usize) -> bool {
    let (c, d) = (func.source(), func.target());
    let (src, tgt) = (c.src(f), c.tgt(f));
    let ff = func.on_morphism(f);
    for c2 in 0..c.object_count() {
        for h in c.hom(c2, tgt) {
            let fh = func.on_morphism(h);
            for k in d.hom(func.on_object(c2), func.on_object(src)) {
                if d.compose(ff, k) != Some(fh) {
                    continue;
                }
                let count = c
                    .hom(c2, src)
                    .into_iter()
                    .filter(|&l| c.compose(f, l) == Some(h) && func.on_morphism(l) == k)
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// The first pair `(g: d → d', c')` with `F(c') = d'` and no cartesian
/// `f: c → c'` over `g`, scanning base morphisms and objects in table order.
pub fn cartesian_lift_failure(func: &Functor) -> Option<LiftFailure> {
    let (c, d) = (func.source(), func.target());
    for g in 0..d.morphism_count() {
        for c1 in 0..c.object_count() {
            if func.on_object(c1) != d.tgt(g) {
                continue;
            }
            let found = (0..c.morphism_count())
                .any(|f| c.tgt(f) == c1 && func.on_morphism(f) == g && is_cartesian_morphism(func, f));
            if !found {
                return Some(LiftFailure { base_morphism: d.morphism_id(g).to_string(), object: c.object_id(c1).to_string() });
            }
        }
    }
    None
}

/// Dual of [`cartesian_lift_failure`], via opposite categories.
pub fn cocartesian_lift_failure(func: &Functor) -> Option<LiftFailure> {
    cartesian_lift_failure(&func.opposite())
}

pub fn is_grothendieck_fibration(func: &Functor) -> bool {
    cartesian_lift_failure(func).is_none()
}

pub fn is_grothendieck_opfibration(func: &Functor) -> bool {
    cocartesian_lift_failure(func).is_none()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{comma_category, ordinal, pseudo_circle};

    #[test]
    fn identity_is_both() {
        let c = Arc::new(pseudo_circle());
        let id = Functor::identity(c);
        assert!(is_grothendieck_fibration(&id));
        assert!(is_grothendieck_opfibration(&id));
    }

    #[test]
    fn point_inclusion_into_interval() {
        let i1 = Arc::new(ordinal(1));
        let at0 = Functor::point_at(i1.clone(), "0").unwrap();
        let at1 = Functor::point_at(i1, "1").unwrap();
        assert!(is_grothendieck_fibration(&at0));
        assert!(!is_grothendieck_opfibration(&at0));
        assert!(!is_grothendieck_fibration(&at1));
        assert!(is_grothendieck_opfibration(&at1));
        assert_eq!(
            cartesian_lift_failure(&at1),
            Some(LiftFailure { base_morphism: "0<1".into(), object: "*".into() })
        );
    }

    #[test]
    fn comma_projection_is_opfibration() {
        let c4 = Arc::new(pseudo_circle());
        let pa = Functor::point_at(c4, "a").unwrap();
        let comma = comma_category(&pa).unwrap();
        assert!(is_grothendieck_opfibration(&comma.to_target));
    }
}
