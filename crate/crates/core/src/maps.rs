//! Frame homomorphisms, their right adjoints (localic maps), the
//! image/preimage adjunction on sublocales, and the map-class taxonomy.
//!
//! Orientation: a homomorphism `h` runs from its source frame M to its target
//! frame L and is the left adjoint of the localic map `f: L -> M`. Both
//! tables are precomputed because every class predicate quantifies over both
//! directions.

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::set::ElemSet;
use crate::sublocale::Sublocale;
use std::sync::Arc;

#[derive(Clone)]
pub struct FrameHom {
    src: Arc<Frame>,
    dst: Arc<Frame>,
    table: Vec<Elem>,
}

impl FrameHom {
    /// Validates the table as a bounded-lattice homomorphism. On a finite
    /// carrier preserving binary joins is preserving all joins.
    pub fn new(src: &Arc<Frame>, dst: &Arc<Frame>, table: Vec<Elem>) -> Result<FrameHom> {
        if table.len() != src.n() || table.iter().any(|&v| v >= dst.n()) {
            return Err(Error::Invalid("hom table has wrong shape".into()));
        }
        let h = |a: Elem| table[a];
        if h(src.bot()) != dst.bot() {
            return Err(Error::NotAHom {
                reason: "bottom not preserved",
                witness: (src.bot(), h(src.bot())),
            });
        }
        if h(src.top()) != dst.top() {
            return Err(Error::NotAHom {
                reason: "top not preserved",
                witness: (src.top(), h(src.top())),
            });
        }
        for a in src.elems() {
            for b in src.elems() {
                if h(src.meet(a, b)) != dst.meet(h(a), h(b)) {
                    return Err(Error::NotAHom {
                        reason: "binary meet not preserved",
                        witness: (a, b),
                    });
                }
                if h(src.join(a, b)) != dst.join(h(a), h(b)) {
                    return Err(Error::NotAHom {
                        reason: "binary join not preserved",
                        witness: (a, b),
                    });
                }
            }
        }
        Ok(FrameHom {
            src: src.clone(),
            dst: dst.clone(),
            table,
        })
    }

    pub fn identity(frame: &Arc<Frame>) -> FrameHom {
        FrameHom {
            src: frame.clone(),
            dst: frame.clone(),
            table: frame.elems().collect(),
        }
    }

    pub fn source(&self) -> &Arc<Frame> {
        &self.src
    }

    pub fn target(&self) -> &Arc<Frame> {
        &self.dst
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// `other` after `self`: requires self.src --self--> self.dst = other.src --other--> other.dst.
    pub fn then(&self, other: &FrameHom) -> Result<FrameHom> {
        if !Arc::ptr_eq(&self.dst, &other.src) {
            return Err(Error::FrameMismatch);
        }
        Ok(FrameHom {
            src: self.src.clone(),
            dst: other.dst.clone(),
            table: self.table.iter().map(|&a| other.apply(a)).collect(),
        })
    }
}

impl std::fmt::Debug for FrameHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FrameHom{:?}", self.table)
    }
}

/// A localic map `f: L -> M`, stored together with its left adjoint.
#[derive(Clone)]
pub struct LocalicMap {
    hom: FrameHom,
    adj: Vec<Elem>,
}

impl LocalicMap {
    /// The right adjoint of `h`: `f(a) = \/ { b | h(b) <= a }`.
    pub fn from_hom(hom: FrameHom) -> LocalicMap {
        let m = &hom.src;
        let l = &hom.dst;
        let adj: Vec<Elem> = l
            .elems()
            .map(|a| m.join_of(m.elems().filter(|&b| l.leq(hom.apply(b), a))))
            .collect();
        let f = LocalicMap { hom, adj };
        debug_assert!(f.adjunction_holds(), "Galois adjunction must hold");
        f
    }

    pub fn identity(frame: &Arc<Frame>) -> LocalicMap {
        LocalicMap::from_hom(FrameHom::identity(frame))
    }

    fn adjunction_holds(&self) -> bool {
        let (l, m) = (self.dom(), self.cod());
        l.elems().all(|a| {
            m.elems()
                .all(|b| m.leq(b, self.adj[a]) == l.leq(self.hom.apply(b), a))
        })
    }

    /// Domain of the localic map (the hom's target).
    pub fn dom(&self) -> &Arc<Frame> {
        &self.hom.dst
    }

    /// Codomain of the localic map (the hom's source).
    pub fn cod(&self) -> &Arc<Frame> {
        &self.hom.src
    }

    pub fn hom(&self) -> &FrameHom {
        &self.hom
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.adj[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.adj
    }

    pub fn is_onto(&self) -> bool {
        let m = self.cod();
        m.elems().all(|b| self.apply(self.hom.apply(b)) == b)
    }

    pub fn is_one_one(&self) -> bool {
        let l = self.dom();
        l.elems()
            .all(|a| l.elems().all(|b| a == b || self.apply(a) != self.apply(b)))
    }

    /// Pointwise image of a sublocale of the domain; always a sublocale of
    /// the codomain.
    pub fn image(&self, s: &Sublocale) -> Result<Sublocale> {
        if !Arc::ptr_eq(s.frame(), self.dom()) {
            return Err(Error::FrameMismatch);
        }
        let members = ElemSet::from_iter(self.cod().n(), s.members().iter().map(|x| self.apply(x)));
        Ok(Sublocale::from_members_unchecked(self.cod(), members))
    }

    /// Localic preimage: the largest sublocale of the domain inside the set
    /// preimage. Closed and open sublocales take the formula path; the
    /// generic path prunes the (meet-closed) set preimage down to its largest
    /// contained sublocale.
    pub fn preimage(&self, t: &Sublocale) -> Result<Sublocale> {
        if !Arc::ptr_eq(t.frame(), self.cod()) {
            return Err(Error::FrameMismatch);
        }
        let l = self.dom();
        if let Some(a) = t.closed_witness() {
            return Ok(Sublocale::closed(l, self.hom.apply(a)));
        }
        if let Some(a) = t.open_witness() {
            return Ok(Sublocale::open(l, self.hom.apply(a)));
        }
        let mut keep = ElemSet::from_iter(
            l.n(),
            l.elems().filter(|&x| t.contains(self.apply(x))),
        );
        loop {
            let bad: Vec<Elem> = keep
                .iter()
                .filter(|&s| !l.elems().all(|x| keep.contains(l.heyting_arrow(x, s))))
                .collect();
            if bad.is_empty() {
                break;
            }
            for s in bad {
                keep.remove(s);
            }
        }
        Ok(Sublocale::from_members_unchecked(l, keep))
    }
}

impl std::fmt::Debug for LocalicMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LocalicMap{:?}", self.adj)
    }
}

/// The map classes decided by `map_class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapClass {
    Dense,
    Closed,
    ZClosed,
    RcClosed,
    ZPreserving,
    RegCPreserving,
    Proper,
    Open,
    NearlyOpen,
    CoNearlyOpen,
    RoNearlyOpen,
    CoOpen,
    RoOpen,
    CoPreserving,
    RegOPreserving,
    CbPreserving,
    ZHeavy,
}

impl MapClass {
    pub const ALL: [MapClass; 17] = [
        MapClass::Dense,
        MapClass::Closed,
        MapClass::ZClosed,
        MapClass::RcClosed,
        MapClass::ZPreserving,
        MapClass::RegCPreserving,
        MapClass::Proper,
        MapClass::Open,
        MapClass::NearlyOpen,
        MapClass::CoNearlyOpen,
        MapClass::RoNearlyOpen,
        MapClass::CoOpen,
        MapClass::RoOpen,
        MapClass::CoPreserving,
        MapClass::RegOPreserving,
        MapClass::CbPreserving,
        MapClass::ZHeavy,
    ];

    pub fn parse(s: &str) -> Option<MapClass> {
        Some(match s {
            "dense" => MapClass::Dense,
            "closed" => MapClass::Closed,
            "z_closed" => MapClass::ZClosed,
            "rc_closed" => MapClass::RcClosed,
            "z_preserving" => MapClass::ZPreserving,
            "regc_preserving" => MapClass::RegCPreserving,
            "proper" => MapClass::Proper,
            "open" => MapClass::Open,
            "nearly_open" => MapClass::NearlyOpen,
            "co_nearly_open" => MapClass::CoNearlyOpen,
            "ro_nearly_open" => MapClass::RoNearlyOpen,
            "co_open" => MapClass::CoOpen,
            "ro_open" => MapClass::RoOpen,
            "co_preserving" => MapClass::CoPreserving,
            "rego_preserving" => MapClass::RegOPreserving,
            "cb_preserving" => MapClass::CbPreserving,
            "z_heavy" => MapClass::ZHeavy,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            MapClass::Dense => "dense",
            MapClass::Closed => "closed",
            MapClass::ZClosed => "z_closed",
            MapClass::RcClosed => "rc_closed",
            MapClass::ZPreserving => "z_preserving",
            MapClass::RegCPreserving => "regc_preserving",
            MapClass::Proper => "proper",
            MapClass::Open => "open",
            MapClass::NearlyOpen => "nearly_open",
            MapClass::CoNearlyOpen => "co_nearly_open",
            MapClass::RoNearlyOpen => "ro_nearly_open",
            MapClass::CoOpen => "co_open",
            MapClass::RoOpen => "ro_open",
            MapClass::CoPreserving => "co_preserving",
            MapClass::RegOPreserving => "rego_preserving",
            MapClass::CbPreserving => "cb_preserving",
            MapClass::ZHeavy => "z_heavy",
        }
    }
}

/// Decides a map class by its defining quantifier, never from cached claims.
pub fn map_class(f: &LocalicMap, class: MapClass) -> bool {
    let l = f.dom();
    let m = f.cod();
    let h = f.hom();
    let closed_on = |domain: Vec<Elem>| {
        domain.into_iter().all(|a| {
            m.elems()
                .all(|b| f.apply(l.join(a, h.apply(b))) == m.join(f.apply(a), b))
        })
    };
    let nearly_on = |domain: Vec<Elem>| {
        domain
            .into_iter()
            .all(|a| h.apply(m.pseudocomplement(a)) == l.pseudocomplement(h.apply(a)))
    };
    let image_open_on = |domain: Vec<Elem>| {
        domain.into_iter().all(|a| {
            f.image(&Sublocale::open(l, a))
                .expect("domain sublocale")
                .open_witness()
                .is_some()
        })
    };
    match class {
        MapClass::Dense => f.apply(l.bot()) == m.bot(),
        MapClass::Closed | MapClass::Proper => {
            // on a finite carrier a directed set has a greatest element, so
            // directed-join preservation is automatic and proper = closed
            closed_on(l.elems().collect())
        }
        MapClass::ZClosed => closed_on(l.cozero_elements()),
        MapClass::RcClosed => closed_on(l.regular_elements()),
        MapClass::ZPreserving => {
            closed_on(l.cozero_elements())
                && l.cozero_elements()
                    .into_iter()
                    .all(|a| m.is_cozero(f.apply(a)))
        }
        MapClass::RegCPreserving => {
            closed_on(l.regular_elements())
                && l.regular_elements()
                    .into_iter()
                    .all(|a| m.is_regular(f.apply(a)))
        }
        MapClass::Open => image_open_on(l.elems().collect()),
        MapClass::CoOpen => image_open_on(l.cozero_elements()),
        MapClass::RoOpen => image_open_on(l.regular_elements()),
        MapClass::NearlyOpen => nearly_on(m.elems().collect()),
        MapClass::CoNearlyOpen => nearly_on(m.cozero_elements()),
        MapClass::RoNearlyOpen => nearly_on(m.regular_elements()),
        MapClass::CoPreserving => l.elems().filter(|&a| l.is_cozero(a)).all(|a| {
            f.image(&Sublocale::open(l, a))
                .expect("domain sublocale")
                .open_witness()
                .is_some_and(|w| m.is_cozero(w))
        }),
        MapClass::RegOPreserving => l.elems().filter(|&a| l.is_regular(a)).all(|a| {
            f.image(&Sublocale::open(l, a))
                .expect("domain sublocale")
                .open_witness()
                .is_some_and(|w| m.is_regular(w))
        }),
        MapClass::CbPreserving => l.elems().all(|a| {
            l.elems().all(|b| {
                !l.completely_below().holds(a, b)
                    || m.completely_below().holds(f.apply(a), f.apply(b))
            })
        }),
        MapClass::ZHeavy => m.elems().all(|a| {
            h.apply(a) != l.top()
                || m.elems()
                    .any(|z| m.is_cozero(z) && m.leq(z, a) && h.apply(z) == l.top())
        }),
    }
}

/// Subfitness: whenever a is not below b, some c joins with a to the top but
/// not with b.
pub fn is_subfit(frame: &Frame) -> bool {
    frame.elems().all(|a| {
        frame.elems().all(|b| {
            frame.leq(a, b)
                || frame
                    .elems()
                    .any(|c| frame.join(a, c) == frame.top() && frame.join(b, c) != frame.top())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sublocale::enumerate_sublocales;

    fn c2() -> Arc<Frame> {
        Arc::new(Frame::chain(2))
    }
    fn c3() -> Arc<Frame> {
        Arc::new(Frame::chain(3))
    }
    fn b4() -> Arc<Frame> {
        Arc::new(Frame::b4())
    }

    /// The map f: C2 -> C3 sending 0 to m, built from its left adjoint.
    fn c2_to_c3_mid() -> LocalicMap {
        let (c2, c3) = (c2(), c3());
        LocalicMap::from_hom(FrameHom::new(&c3, &c2, vec![0, 0, 1]).unwrap())
    }

    #[test]
    fn right_adjoint_examples() {
        let f = c2_to_c3_mid();
        assert_eq!(f.table(), &[1, 2]);
        let (c2f, c3f) = (c2(), c3());
        let g = LocalicMap::from_hom(FrameHom::new(&c3f, &c2f, vec![0, 1, 1]).unwrap());
        assert_eq!(g.table(), &[0, 2]);
        let id = LocalicMap::identity(&b4());
        assert_eq!(id.table(), &[0, 1, 2, 3]);
    }

    #[test]
    fn invalid_homs_are_rejected() {
        let (c2f, c3f) = (c2(), c3());
        // top not preserved
        assert!(matches!(
            FrameHom::new(&c3f, &c2f, vec![0, 0, 0]),
            Err(Error::NotAHom { .. })
        ));
        // join not preserved on B4: send both atoms to 0 but keep the top
        let b = b4();
        assert!(matches!(
            FrameHom::new(&b, &c2f, vec![0, 0, 0, 1]),
            Err(Error::NotAHom { .. })
        ));
    }

    #[test]
    fn image_examples() {
        let f = c2_to_c3_mid();
        let img = f.image(&Sublocale::whole(f.dom())).unwrap();
        assert_eq!(img.members().iter().collect::<Vec<_>>(), vec![1, 2]);
        assert!(f.image(&Sublocale::void(f.dom())).unwrap().is_void());
    }

    #[test]
    fn image_closure_formula() {
        // closure(f[c(a)]) = c(f(a))
        let maps = [c2_to_c3_mid(), LocalicMap::identity(&b4())];
        for f in &maps {
            for a in f.dom().elems() {
                let img = f.image(&Sublocale::closed(f.dom(), a)).unwrap();
                assert_eq!(img.closure(), Sublocale::closed(f.cod(), f.apply(a)));
            }
        }
    }

    #[test]
    fn preimage_examples() {
        let f = c2_to_c3_mid();
        // preimage of c(m) in the codomain C3 is c(h(m)) = c(0) = all of C2
        let t = Sublocale::closed(f.cod(), 1);
        assert!(f.preimage(&t).unwrap().is_whole());
        assert!(f.preimage(&Sublocale::whole(f.cod())).unwrap().is_whole());
        assert!(f.preimage(&Sublocale::void(f.cod())).unwrap().is_void());
    }

    #[test]
    fn image_preimage_adjunction() {
        let maps = [
            c2_to_c3_mid(),
            LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 1, 1]).unwrap()),
            LocalicMap::identity(&b4()),
        ];
        for f in &maps {
            let doms = enumerate_sublocales(f.dom(), 8).unwrap();
            let cods = enumerate_sublocales(f.cod(), 8).unwrap();
            for s in &doms {
                for t in &cods {
                    let lhs = f.image(s).unwrap().subset_of(t);
                    let rhs = s.subset_of(&f.preimage(t).unwrap());
                    assert_eq!(lhs, rhs, "adjunction failed");
                }
            }
            // the preimage is the largest sublocale inside the set preimage
            for t in &cods {
                let p = f.preimage(t).unwrap();
                let best = doms
                    .iter()
                    .filter(|s| s.members().iter().all(|x| t.contains(f.apply(x))))
                    .max_by_key(|s| s.len())
                    .unwrap();
                assert_eq!(&p, best);
            }
            // complements pass through the preimage
            for a in f.cod().elems() {
                let pc = f.preimage(&Sublocale::closed(f.cod(), a)).unwrap();
                let po = f.preimage(&Sublocale::open(f.cod(), a)).unwrap();
                assert_eq!(pc.supplement(8).unwrap(), po);
            }
        }
    }

    #[test]
    fn identity_satisfies_every_class() {
        for frame in [c2(), c3(), b4()] {
            let id = LocalicMap::identity(&frame);
            for class in MapClass::ALL {
                assert!(map_class(&id, class), "identity failed {class:?}");
            }
        }
    }

    #[test]
    fn dense_and_cb_examples() {
        let f = c2_to_c3_mid();
        assert!(!map_class(&f, MapClass::Dense));
        assert!(!map_class(&f, MapClass::CbPreserving));
    }

    #[test]
    fn class_implications() {
        let maps = [
            c2_to_c3_mid(),
            LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 1, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&c2(), &c3(), vec![0, 2]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&b4(), &c2(), vec![0, 0, 1, 1]).unwrap()),
            LocalicMap::identity(&b4()),
        ];
        for f in &maps {
            if map_class(f, MapClass::Closed) {
                assert!(map_class(f, MapClass::ZClosed));
                assert!(map_class(f, MapClass::RcClosed));
            }
            assert_eq!(map_class(f, MapClass::Closed), map_class(f, MapClass::Proper));
            if map_class(f, MapClass::Open) {
                assert!(map_class(f, MapClass::NearlyOpen));
            }
            if map_class(f, MapClass::NearlyOpen) {
                assert!(map_class(f, MapClass::CoNearlyOpen));
                assert!(map_class(f, MapClass::RoNearlyOpen));
            }
            let zp = map_class(f, MapClass::ZPreserving);
            let zc = map_class(f, MapClass::ZClosed);
            let coz_into_coz = f
                .dom()
                .cozero_elements()
                .into_iter()
                .all(|a| f.cod().is_cozero(f.apply(a)));
            assert_eq!(zp, zc && coz_into_coz);
        }
    }

    #[test]
    fn subfit_examples() {
        assert!(is_subfit(&Frame::b4()));
        assert!(!is_subfit(&Frame::chain(3)));
        assert!(is_subfit(&Frame::chain(2)));
    }
}
