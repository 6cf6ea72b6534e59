//! Compact and Lindelöf reflections of a finite frame, materialized as
//! explicit ideal frames.
//!
//! The compact reflection is the frame of regular ideals (every member has
//! another member completely above it); the Lindelöf reflection is the frame
//! of sigma-ideals of the cozero part, which on a finite carrier are just its
//! lattice ideals. Both are built as ordinary [`Frame`]s over the inclusion
//! order so the whole element and sublocale calculus applies to them
//! unchanged.

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::maps::{FrameHom, LocalicMap};
use crate::set::ElemSet;
use std::collections::HashMap;
use std::sync::Arc;

/// Default bound on the number of ideals a reflection may materialize.
pub const IDEAL_COUNT_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaKind {
    Beta,
    Lambda,
}

impl GammaKind {
    pub fn name(&self) -> &'static str {
        match self {
            GammaKind::Beta => "beta",
            GammaKind::Lambda => "lambda",
        }
    }

    pub fn parse(s: &str) -> Option<GammaKind> {
        match s {
            "beta" => Some(GammaKind::Beta),
            "lambda" => Some(GammaKind::Lambda),
            _ => None,
        }
    }
}

/// A reflection of `base`: the ideal list, the ideal frame, and the unit map.
pub struct Reflection {
    base: Arc<Frame>,
    kind: GammaKind,
    ideals: Vec<ElemSet>,
    index: HashMap<ElemSet, usize>,
    frame: Arc<Frame>,
    unit: LocalicMap,
}

impl Reflection {
    pub fn base(&self) -> &Arc<Frame> {
        &self.base
    }

    pub fn kind(&self) -> GammaKind {
        self.kind
    }

    pub fn ideals(&self) -> &[ElemSet] {
        &self.ideals
    }

    pub fn ideal(&self, i: Elem) -> &ElemSet {
        &self.ideals[i]
    }

    pub fn index_of(&self, ideal: &ElemSet) -> Option<Elem> {
        self.index.get(ideal).copied()
    }

    /// The ideal frame itself.
    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    /// The unit localic map `base -> ideal frame`; its left adjoint takes an
    /// ideal to its join.
    pub fn unit(&self) -> &LocalicMap {
        &self.unit
    }

    /// The unit formula: all elements completely below `a` for the compact
    /// reflection, the cozero part of the downset of `a` for the Lindelöf one.
    pub fn unit_ideal_of(&self, a: Elem) -> ElemSet {
        let f = &self.base;
        match self.kind {
            GammaKind::Beta => ElemSet::from_iter(
                f.n(),
                f.elems().filter(|&x| f.completely_below().holds(x, a)),
            ),
            GammaKind::Lambda => ElemSet::from_iter(
                f.n(),
                f.elems().filter(|&x| f.is_cozero(x) && f.leq(x, a)),
            ),
        }
    }
}

/// Builds the reflection of `base`, refusing to materialize more than
/// `max_ideals` ideals.
pub fn reflect(base: &Arc<Frame>, kind: GammaKind, max_ideals: usize) -> Result<Reflection> {
    let carrier: Vec<Elem> = match kind {
        GammaKind::Beta => base.elems().collect(),
        GammaKind::Lambda => base.cozero_elements(),
    };
    let mut ideals = Vec::new();
    enumerate_ideals(base, &carrier, kind, max_ideals, &mut ideals)?;
    ideals.sort();

    let index: HashMap<ElemSet, usize> =
        ideals.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

    let k = ideals.len();
    let leq: Vec<bool> = ideals
        .iter()
        .flat_map(|i| ideals.iter().map(move |j| i.is_subset(j)))
        .collect();
    let frame = Arc::new(Frame::validate(k, leq)?);

    // left adjoint of the unit: join of the ideal
    let join_table: Vec<Elem> = ideals.iter().map(|i| base.join_of(i.iter())).collect();
    let hom = FrameHom::new(&frame, base, join_table)?;
    let unit = LocalicMap::from_hom(hom);

    let refl = Reflection {
        base: base.clone(),
        kind,
        ideals,
        index,
        frame,
        unit,
    };

    // the adjoint must agree with the unit formula elementwise
    for a in refl.base.elems() {
        let expected = refl.unit_ideal_of(a);
        match refl.index_of(&expected) {
            None => return Err(Error::UnitNotIdeal { elem: a }),
            Some(i) if refl.unit.apply(a) != i => {
                return Err(Error::Invalid(format!(
                    "unit adjoint disagrees with the unit formula at element {a}"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(refl)
}

/// All ideals of the carrier sub-join-semilattice: down-closed within the
/// carrier, closed under binary joins, containing the bottom; for the compact
/// reflection additionally regular.
fn enumerate_ideals(
    base: &Arc<Frame>,
    carrier: &[Elem],
    kind: GammaKind,
    max: usize,
    out: &mut Vec<ElemSet>,
) -> Result<()> {
    let n = base.n();
    // process carrier elements in ascending index order; an element may join
    // only if all carrier elements below it are already in
    fn rec(
        base: &Arc<Frame>,
        carrier: &[Elem],
        kind: GammaKind,
        max: usize,
        pos: usize,
        current: &mut ElemSet,
        out: &mut Vec<ElemSet>,
    ) -> Result<()> {
        if pos == carrier.len() {
            let join_closed = current
                .iter()
                .all(|x| current.iter().all(|y| current.contains(base.join(x, y))));
            if !join_closed {
                return Ok(());
            }
            if kind == GammaKind::Beta {
                let regular = current.iter().all(|a| {
                    current
                        .iter()
                        .any(|b| base.completely_below().holds(a, b))
                });
                if !regular {
                    return Ok(());
                }
            }
            if out.len() >= max {
                return Err(Error::CapExceeded {
                    what: "reflection ideal enumeration",
                    cap: max,
                    got: out.len() + 1,
                    unit: "ideals",
                });
            }
            out.push(current.clone());
            return Ok(());
        }
        let e = carrier[pos];
        // skip e (downward closure within the carrier then forbids nothing)
        rec(base, carrier, kind, max, pos + 1, current, out)?;
        let below_in = carrier
            .iter()
            .take(pos)
            .all(|&x| !base.leq(x, e) || current.contains(x));
        if below_in && (e == base.bot() || current.contains(base.bot())) {
            current.insert(e);
            rec(base, carrier, kind, max, pos + 1, current, out)?;
            current.remove(e);
        }
        Ok(())
    }
    let mut current = ElemSet::empty(n);
    rec(base, carrier, kind, max, 0, &mut current, out)?;
    // only keep sets containing the bottom (the empty set fell out of the DFS)
    out.retain(|s| s.contains(base.bot()));
    Ok(())
}

/// Lifts `h` (a hom between the bases) to a hom between the ideal frames:
/// each ideal maps to the carrier downset of its image.
pub fn lift_hom(h: &FrameHom, from: &Reflection, to: &Reflection) -> Result<FrameHom> {
    if from.kind != to.kind
        || !Arc::ptr_eq(h.source(), from.base())
        || !Arc::ptr_eq(h.target(), to.base())
    {
        return Err(Error::FrameMismatch);
    }
    let l = to.base();
    let mut table = Vec::with_capacity(from.ideals().len());
    for (idx, ideal) in from.ideals().iter().enumerate() {
        let lifted = match from.kind {
            GammaKind::Beta => ElemSet::from_iter(
                l.n(),
                l.elems()
                    .filter(|&y| ideal.iter().any(|x| l.leq(y, h.apply(x)))),
            ),
            GammaKind::Lambda => ElemSet::from_iter(
                l.n(),
                l.elems().filter(|&y| {
                    l.is_cozero(y) && ideal.iter().any(|x| l.leq(y, h.apply(x)))
                }),
            ),
        };
        match to.index_of(&lifted) {
            Some(i) => table.push(i),
            None => return Err(Error::LiftNotRegular { ideal: idx }),
        }
    }
    FrameHom::new(from.frame(), to.frame(), table)
}

/// Checks both reflection squares for a localic map `f: L -> M`:
/// the homs commute with the unit adjoints, and the localic maps commute with
/// the units.
pub fn check_squares(f: &LocalicMap, refl_l: &Reflection, refl_m: &Reflection) -> Result<bool> {
    if !Arc::ptr_eq(f.dom(), refl_l.base()) || !Arc::ptr_eq(f.cod(), refl_m.base()) {
        return Err(Error::FrameMismatch);
    }
    let h = f.hom(); // M -> L
    let h_lift = lift_hom(h, refl_m, refl_l)?; // ideal frame of M -> ideal frame of L
    let f_lift = LocalicMap::from_hom(h_lift.clone());

    let hom_square = refl_m.frame().elems().all(|i| {
        let via_m = h.apply(refl_m.unit().hom().apply(i));
        let via_l = refl_l.unit().hom().apply(h_lift.apply(i));
        via_m == via_l
    });
    let map_square = refl_l.base().elems().all(|a| {
        let via_m = refl_m.unit().apply(f.apply(a));
        let via_l = f_lift.apply(refl_l.unit().apply(a));
        via_m == via_l
    });
    Ok(hom_square && map_square)
}

/// Frame-level property flags. Compactness is constant on finite carriers:
/// every cover has a maximum, hence a finite subcover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameProps {
    pub compact: bool,
    pub regular: bool,
    pub completely_regular: bool,
}

pub fn frame_props(f: &Frame) -> FrameProps {
    let regular = f
        .elems()
        .all(|a| f.join_of(f.elems().filter(|&b| f.rather_below().holds(b, a))) == a);
    let completely_regular = f
        .elems()
        .all(|a| f.join_of(f.elems().filter(|&b| f.completely_below().holds(b, a))) == a);
    FrameProps {
        compact: true,
        regular,
        completely_regular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<Frame> {
        Arc::new(Frame::chain(2))
    }
    fn c3() -> Arc<Frame> {
        Arc::new(Frame::chain(3))
    }
    fn b4() -> Arc<Frame> {
        Arc::new(Frame::b4())
    }

    #[test]
    fn compact_reflection_of_the_3_chain() {
        let f = c3();
        let r = reflect(&f, GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
        // regular ideals: {0} and the whole chain; {0, m} fails regularity
        assert_eq!(r.ideals().len(), 2);
        assert_eq!(r.ideal(0).iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(r.ideal(1).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(r.unit().apply(1), 0, "unit(m) is the bottom ideal");
        assert!(r.frame().is_isomorphic(&Frame::chain(2)));
    }

    #[test]
    fn lindelof_reflection_of_the_3_chain() {
        let f = c3();
        let r = reflect(&f, GammaKind::Lambda, IDEAL_COUNT_CAP).unwrap();
        assert_eq!(r.ideals().len(), 2);
        assert_eq!(r.unit().apply(1), 0);
        assert!(r.frame().is_isomorphic(&Frame::chain(2)));
    }

    #[test]
    fn boolean_square_is_its_own_compactification() {
        let f = b4();
        let r = reflect(&f, GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
        assert_eq!(r.ideals().len(), 4);
        assert!(r.frame().is_isomorphic(&Frame::b4()));
        let rl = reflect(&f, GammaKind::Lambda, IDEAL_COUNT_CAP).unwrap();
        assert!(rl.frame().is_isomorphic(&Frame::b4()));
    }

    #[test]
    fn unit_is_dense_and_injectivity_tracks_complete_regularity() {
        for f in [c2(), c3(), b4(), Arc::new(Frame::chain(4))] {
            for kind in [GammaKind::Beta, GammaKind::Lambda] {
                let r = reflect(&f, kind, IDEAL_COUNT_CAP).unwrap();
                assert_eq!(r.unit().apply(f.bot()), r.frame().bot(), "unit not dense");
                let cr = frame_props(&f).completely_regular;
                assert_eq!(r.unit().is_one_one(), cr);
            }
        }
    }

    #[test]
    fn compact_reflection_is_regular() {
        for f in [c2(), c3(), b4(), Arc::new(Frame::chain(4))] {
            let r = reflect(&f, GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
            assert!(frame_props(r.frame()).regular);
        }
    }

    #[test]
    fn frame_props_examples() {
        let p = frame_props(&Frame::chain(3));
        assert!(p.compact && !p.regular && !p.completely_regular);
        let q = frame_props(&Frame::b4());
        assert!(q.regular && q.completely_regular);
    }

    #[test]
    fn lift_identity_and_chain_homs() {
        let f = c3();
        let rb = reflect(&f, GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
        let id = FrameHom::identity(&f);
        let lifted = lift_hom(&id, &rb, &rb).unwrap();
        assert_eq!(lifted.table(), &[0, 1]);

        // h: C3 -> C2 with h(m) = 0 lifts to the 2-chain map on ideals
        let two = c2();
        let h = FrameHom::new(&f, &two, vec![0, 0, 1]).unwrap();
        let rc2 = reflect(&two, GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
        let hb = lift_hom(&h, &rb, &rc2).unwrap();
        assert_eq!(rc2.ideal(hb.apply(0)).iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(rc2.ideal(hb.apply(1)).iter().collect::<Vec<_>>(), vec![0, 1]);

        // lambda lift of h: C3 -> C2 with h(m) = 1 preserves the top ideal
        let h2 = FrameHom::new(&f, &two, vec![0, 1, 1]).unwrap();
        let rl3 = reflect(&f, GammaKind::Lambda, IDEAL_COUNT_CAP).unwrap();
        let rl2 = reflect(&two, GammaKind::Lambda, IDEAL_COUNT_CAP).unwrap();
        let hl = lift_hom(&h2, &rl3, &rl2).unwrap();
        assert_eq!(hl.apply(rl3.frame().top()), rl2.frame().top());
    }

    #[test]
    fn squares_commute_for_sample_maps() {
        let maps = [
            LocalicMap::identity(&c3()),
            LocalicMap::identity(&b4()),
            LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 0, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 1, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&b4(), &c2(), vec![0, 0, 1, 1]).unwrap()),
        ];
        for f in &maps {
            for kind in [GammaKind::Beta, GammaKind::Lambda] {
                let rl = reflect(f.dom(), kind, IDEAL_COUNT_CAP).unwrap();
                let rm = reflect(f.cod(), kind, IDEAL_COUNT_CAP).unwrap();
                assert!(check_squares(f, &rl, &rm).unwrap(), "square failed for {kind:?}");
                // the lifted hom never exceeds the unit of the hom image
                let h = f.hom();
                let hl = lift_hom(h, &rm, &rl).unwrap();
                for a in f.cod().elems() {
                    let lhs = hl.apply(rm.unit().apply(a));
                    let rhs = rl.unit().apply(h.apply(a));
                    assert!(rl.frame().leq(lhs, rhs));
                }
            }
        }
    }

    #[test]
    fn ideal_joins_match_completion_oracle() {
        // join in the ideal frame = least enumerated ideal containing the union
        for f in [c3(), b4(), Arc::new(Frame::chain(4))] {
            for kind in [GammaKind::Beta, GammaKind::Lambda] {
                let r = reflect(&f, kind, IDEAL_COUNT_CAP).unwrap();
                let k = r.ideals().len();
                for i in 0..k {
                    for j in 0..k {
                        let u = r.ideal(i).union(r.ideal(j));
                        let containing: Vec<usize> =
                            (0..k).filter(|&x| u.is_subset(r.ideal(x))).collect();
                        let least = containing
                            .iter()
                            .copied()
                            .find(|&x| {
                                containing.iter().all(|&y| r.ideal(x).is_subset(r.ideal(y)))
                            })
                            .expect("containing ideals are intersection-closed");
                        assert_eq!(r.frame().join(i, j), least);
                    }
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            reflect(&b4(), GammaKind::Beta, 2),
            Err(Error::CapExceeded { .. })
        ));
    }
}
