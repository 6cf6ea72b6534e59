//! Selection functions on sublocales and the map predicates built from them.
//!
//! A selection assigns to each frame a family of sublocales (closed, open,
//! zero, cozero, regular closed, regular open, or a custom picker). For a
//! localic map `f: L -> M` and a selection over the codomain, the reflection
//! predicate asks that the lifted hom and the units commute on the minima of
//! the selected sublocales. Every characterization theorem is implemented on
//! both sides: the definitional reflection equality and the element-level
//! conditions are separate evaluation paths whose agreement is the point of
//! the verification harness.

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::maps::{map_class, LocalicMap, MapClass};
use crate::reflection::{lift_hom, Reflection};
use crate::sublocale::Sublocale;
use std::sync::Arc;

/// A custom selection: a picker plus a declared complementedness claim.
pub struct CustomSelection {
    pub name: &'static str,
    pub complemented: bool,
    pub pick: fn(&Arc<Frame>) -> Vec<Sublocale>,
}

#[derive(Clone, Copy)]
pub enum Selection {
    Closed,
    Open,
    Zero,
    Cozero,
    RegClosed,
    RegOpen,
    Custom(&'static CustomSelection),
}

impl Selection {
    pub const STANDARD: [Selection; 6] = [
        Selection::Closed,
        Selection::Open,
        Selection::Zero,
        Selection::Cozero,
        Selection::RegClosed,
        Selection::RegOpen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Selection::Closed => "closed",
            Selection::Open => "open",
            Selection::Zero => "zero",
            Selection::Cozero => "coz",
            Selection::RegClosed => "reg_closed",
            Selection::RegOpen => "reg_open",
            Selection::Custom(c) => c.name,
        }
    }

    pub fn parse(s: &str) -> Option<Selection> {
        Some(match s {
            "closed" => Selection::Closed,
            "open" => Selection::Open,
            "zero" => Selection::Zero,
            "coz" | "cozero" => Selection::Cozero,
            "reg_closed" => Selection::RegClosed,
            "reg_open" => Selection::RegOpen,
            _ => return None,
        })
    }

    /// Whether every selected sublocale is complemented in S(L). The six
    /// standard families are complemented (each is open or closed); custom
    /// selections carry their own claim.
    pub fn all_complemented(&self) -> bool {
        match self {
            Selection::Custom(c) => c.complemented,
            _ => true,
        }
    }

    /// Materializes the selection over a frame, in canonical order.
    pub fn select(&self, frame: &Arc<Frame>) -> Vec<Sublocale> {
        let mut out: Vec<Sublocale> = match self {
            Selection::Closed => frame.elems().map(|a| Sublocale::closed(frame, a)).collect(),
            Selection::Open => frame.elems().map(|a| Sublocale::open(frame, a)).collect(),
            Selection::Zero => frame
                .cozero_elements()
                .into_iter()
                .map(|a| Sublocale::closed(frame, a))
                .collect(),
            Selection::Cozero => frame
                .cozero_elements()
                .into_iter()
                .map(|a| Sublocale::open(frame, a))
                .collect(),
            Selection::RegClosed => frame
                .regular_elements()
                .into_iter()
                .map(|a| Sublocale::closed(frame, a))
                .collect(),
            Selection::RegOpen => frame
                .regular_elements()
                .into_iter()
                .map(|a| Sublocale::open(frame, a))
                .collect(),
            Selection::Custom(c) => (c.pick)(frame),
        };
        out.sort();
        out.dedup();
        out
    }

    /// Pointwise containment of selections on one frame.
    pub fn contained_in(&self, other: &Selection, frame: &Arc<Frame>) -> bool {
        let big = other.select(frame);
        self.select(frame).iter().all(|s| big.contains(s))
    }
}

impl std::fmt::Debug for Selection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The reflection-side predicate: for every selected S in the codomain,
/// the lifted hom sends the unit of min S to the unit of min f_{-1}[S].
pub fn is_gamma_map(
    f: &LocalicMap,
    sel: Selection,
    refl_l: &Reflection,
    refl_m: &Reflection,
) -> Result<bool> {
    let h_lift = lift_hom(f.hom(), refl_m, refl_l)?;
    for s in sel.select(f.cod()) {
        let lhs = h_lift.apply(refl_m.unit().apply(s.minimum()));
        let rhs = refl_l.unit().apply(f.preimage(&s)?.minimum());
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same predicate evaluated in its closure form inside the ideal frames:
/// closure of the unit image of the preimage against the lifted preimage of
/// the closure of the unit image. A deliberately different route used as a
/// cross-check.
pub fn is_gamma_map_closure_form(
    f: &LocalicMap,
    sel: Selection,
    refl_l: &Reflection,
    refl_m: &Reflection,
) -> Result<bool> {
    let h_lift = lift_hom(f.hom(), refl_m, refl_l)?;
    let f_lift = LocalicMap::from_hom(h_lift);
    for s in sel.select(f.cod()) {
        let lhs = refl_l.unit().image(&f.preimage(&s)?)?.closure();
        let rhs = f_lift.preimage(&refl_m.unit().image(&s)?.closure())?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Element-level conditions equivalent to the compact-reflection predicate.
/// The roman numbering follows the order: open premise (ii), completely-below
/// condition (iii), then the zero / cozero / regular-open / regular-closed /
/// closed variants (iv) to (viii).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaMode {
    CondII,
    CondIII,
    CondIV,
    CondV,
    CondVI,
    CondVII,
    CondVIII,
}

impl BetaMode {
    pub const ALL: [BetaMode; 7] = [
        BetaMode::CondII,
        BetaMode::CondIII,
        BetaMode::CondIV,
        BetaMode::CondV,
        BetaMode::CondVI,
        BetaMode::CondVII,
        BetaMode::CondVIII,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BetaMode::CondII => "ii",
            BetaMode::CondIII => "iii",
            BetaMode::CondIV => "iv",
            BetaMode::CondV => "v",
            BetaMode::CondVI => "vi",
            BetaMode::CondVII => "vii",
            BetaMode::CondVIII => "viii",
        }
    }
}

/// Decides the compact-reflection predicate by the chosen element-level
/// condition, without touching the ideal frames.
pub fn is_beta_map_thm(f: &LocalicMap, sel: Selection, mode: BetaMode) -> Result<bool> {
    let l = f.dom();
    let m = f.cod();
    let h = f.hom();
    for s in sel.select(m) {
        let w = f.preimage(&s)?.minimum();
        let s0 = s.minimum();
        let ok = match mode {
            // a completely below the preimage minimum lifts under h
            BetaMode::CondIII => l.elems().all(|a| {
                !l.completely_below().holds(a, w)
                    || m.elems().any(|b| {
                        l.leq(a, h.apply(b)) && m.completely_below().holds(b, s0)
                    })
            }),
            // open sublocale separated from the preimage
            BetaMode::CondII => l.elems().all(|a| {
                !l.closed_separated(l.pseudocomplement(a), w)
                    || m.elems().any(|b| {
                        l.leq(a, h.apply(b))
                            && m.closed_separated(m.pseudocomplement(b), s0)
                    })
            }),
            // zero sublocale separated from the preimage
            BetaMode::CondIV => l.cozero_elements().into_iter().all(|z| {
                !l.closed_separated(z, w)
                    || m.cozero_elements()
                        .into_iter()
                        .any(|d| l.leq(h.apply(d), z) && m.closed_separated(d, s0))
            }),
            // cozero sublocale separated from the preimage
            BetaMode::CondV => l.cozero_elements().into_iter().all(|c| {
                !l.closed_separated(l.pseudocomplement(c), w)
                    || m.cozero_elements().into_iter().any(|d| {
                        l.leq(c, h.apply(d))
                            && m.closed_separated(m.pseudocomplement(d), s0)
                    })
            }),
            // regular open sublocale separated from the preimage
            BetaMode::CondVI => l.regular_elements().into_iter().all(|r| {
                !l.closed_separated(l.pseudocomplement(r), w)
                    || m.regular_elements().into_iter().any(|v| {
                        l.leq(r, h.apply(v))
                            && m.closed_separated(m.pseudocomplement(v), s0)
                    })
            }),
            // regular closed sublocale separated from the preimage
            BetaMode::CondVII => l.regular_elements().into_iter().all(|r| {
                !l.closed_separated(r, w)
                    || m.regular_elements()
                        .into_iter()
                        .any(|v| l.leq(h.apply(v), r) && m.closed_separated(v, s0))
            }),
            // closed sublocale separated from the preimage
            BetaMode::CondVIII => l.elems().all(|a| {
                !l.closed_separated(a, w)
                    || m.elems()
                        .any(|b| l.leq(h.apply(b), a) && m.closed_separated(b, s0))
            }),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First witness of failure of the completely-below condition: the selected
/// sublocale and the element that cannot be lifted.
pub fn beta_witness(f: &LocalicMap, sel: Selection) -> Result<Option<(Sublocale, Elem)>> {
    let l = f.dom();
    let m = f.cod();
    let h = f.hom();
    for s in sel.select(m) {
        let w = f.preimage(&s)?.minimum();
        let s0 = s.minimum();
        for a in l.elems() {
            if l.completely_below().holds(a, w)
                && !m
                    .elems()
                    .any(|b| l.leq(a, h.apply(b)) && m.completely_below().holds(b, s0))
            {
                return Ok(Some((s, a)));
            }
        }
    }
    Ok(None)
}

/// Element- and sublocale-level conditions equivalent to the Lindelöf
/// reflection predicate. Modes (v) and (vi) require a complemented selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambdaMode {
    CondII,
    CondIII,
    CondIV,
    CondV,
    CondVI,
}

impl LambdaMode {
    pub const ALL: [LambdaMode; 5] = [
        LambdaMode::CondII,
        LambdaMode::CondIII,
        LambdaMode::CondIV,
        LambdaMode::CondV,
        LambdaMode::CondVI,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LambdaMode::CondII => "ii",
            LambdaMode::CondIII => "iii",
            LambdaMode::CondIV => "iv",
            LambdaMode::CondV => "v",
            LambdaMode::CondVI => "vi",
        }
    }

    pub fn needs_complemented(&self) -> bool {
        matches!(self, LambdaMode::CondV | LambdaMode::CondVI)
    }
}

pub fn is_lambda_map_thm(f: &LocalicMap, sel: Selection, mode: LambdaMode) -> Result<bool> {
    if mode.needs_complemented() && !sel.all_complemented() {
        return Err(Error::ModeRequiresComplemented);
    }
    let l = f.dom();
    let m = f.cod();
    let h = f.hom();
    for s in sel.select(m) {
        let pre = f.preimage(&s)?;
        let ok = match mode {
            // zero sublocale above the preimage pushes to the codomain
            LambdaMode::CondII => l.cozero_elements().into_iter().all(|z| {
                let cz = Sublocale::closed(l, z);
                !pre.subset_of(&cz)
                    || m.cozero_elements().into_iter().any(|d| {
                        s.subset_of(&Sublocale::closed(m, d))
                            && f.preimage(&Sublocale::closed(m, d))
                                .is_ok_and(|p| p.subset_of(&cz))
                    })
            }),
            // cozero sublocale missing the preimage
            LambdaMode::CondIII => l.cozero_elements().into_iter().all(|c| {
                let oc = Sublocale::open(l, c);
                !pre.meet_with(&oc).is_ok_and(|x| x.is_void())
                    || m.cozero_elements().into_iter().any(|d| {
                        s.meet_with(&Sublocale::open(m, d))
                            .is_ok_and(|x| x.is_void())
                            && l.leq(c, h.apply(d))
                    })
            }),
            // cozero element below the preimage minimum lifts under h
            LambdaMode::CondIV => {
                let w = pre.minimum();
                let s0 = s.minimum();
                l.cozero_elements().into_iter().all(|x| {
                    !l.leq(x, w)
                        || m.cozero_elements()
                            .into_iter()
                            .any(|y| m.leq(y, s0) && l.leq(x, h.apply(y)))
                })
            }
            // cozero sublocale inside the preimage of the supplement
            LambdaMode::CondV => {
                let supp_pre = f.preimage(&s.supplement(usize::MAX)?)?;
                l.cozero_elements().into_iter().all(|c| {
                    !Sublocale::open(l, c).subset_of(&supp_pre)
                        || m.cozero_elements().into_iter().any(|d| {
                            Sublocale::open(m, d).subset_of(&s.supplement(usize::MAX).unwrap())
                                && l.leq(c, h.apply(d))
                        })
                })
            }
            // zero sublocale joining with the preimage of the supplement to L
            LambdaMode::CondVI => {
                let supp = s.supplement(usize::MAX)?;
                let supp_pre = f.preimage(&supp)?;
                l.cozero_elements().into_iter().all(|z| {
                    let cz = Sublocale::closed(l, z);
                    !cz.join_with(&supp_pre).is_ok_and(|x| x.is_whole())
                        || m.cozero_elements().into_iter().any(|zp| {
                            Sublocale::closed(m, zp)
                                .join_with(&supp)
                                .is_ok_and(|x| x.is_whole())
                                && f.preimage(&Sublocale::closed(m, zp))
                                    .is_ok_and(|p| p.subset_of(&cz))
                        })
                })
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First witness of failure of the cozero-element condition.
pub fn lambda_witness(f: &LocalicMap, sel: Selection) -> Result<Option<(Sublocale, Elem)>> {
    let l = f.dom();
    let m = f.cod();
    let h = f.hom();
    for s in sel.select(m) {
        let w = f.preimage(&s)?.minimum();
        let s0 = s.minimum();
        for x in l.cozero_elements() {
            if l.leq(x, w)
                && !m
                    .cozero_elements()
                    .into_iter()
                    .any(|y| m.leq(y, s0) && l.leq(x, h.apply(y)))
            {
                return Ok(Some((s, x)));
            }
        }
    }
    Ok(None)
}

/// The two-selection generalization: whenever the preimage of a selected S
/// misses a T from the domain family, some T' from the codomain family misses
/// S and its preimage swallows T.
pub fn is_st_lambda_map(f: &LocalicMap, s_sel: Selection, t_sel: Selection) -> Result<bool> {
    let l = f.dom();
    let m = f.cod();
    let t_m = t_sel.select(m);
    for s in s_sel.select(m) {
        let pre = f.preimage(&s)?;
        for t in t_sel.select(l) {
            if !pre.meet_with(&t)?.is_void() {
                continue;
            }
            let mut found = false;
            for tp in &t_m {
                if s.meet_with(tp)?.is_void() && t.subset_of(&f.preimage(tp)?) {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The five mutually equivalent faces of preserving the completely-below
/// relation, evaluated independently of one another.
pub fn assertive_conditions(
    f: &LocalicMap,
    refl_l: &Reflection,
    refl_m: &Reflection,
) -> Result<[bool; 5]> {
    let l = f.dom();
    let m = f.cod();
    let h = f.hom();
    let c1 = map_class(f, MapClass::CbPreserving);
    let c2 = is_gamma_map(f, Selection::Open, refl_l, refl_m)?;
    let c3 = is_beta_map_thm(f, Selection::Open, BetaMode::CondII)?;
    let h_lift = lift_hom(h, refl_m, refl_l)?;
    let c4 = m.elems().all(|x| {
        h_lift.apply(refl_m.unit().apply(m.pseudocomplement(x)))
            == refl_l.unit().apply(l.pseudocomplement(h.apply(x)))
    });
    let c5 = m.elems().all(|x| {
        let hxs = l.pseudocomplement(h.apply(x));
        let xs = m.pseudocomplement(x);
        l.elems().all(|a| {
            !l.completely_below().holds(a, hxs)
                || m.elems()
                    .any(|b| l.leq(a, h.apply(b)) && m.completely_below().holds(b, xs))
        })
    });
    Ok([c1, c2, c3, c4, c5])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::maps::FrameHom;
    use crate::reflection::{reflect, GammaKind, IDEAL_COUNT_CAP};

    fn c2() -> Arc<Frame> {
        Arc::new(Frame::chain(2))
    }
    fn c3() -> Arc<Frame> {
        Arc::new(Frame::chain(3))
    }
    fn b4() -> Arc<Frame> {
        Arc::new(Frame::b4())
    }

    fn sample_maps() -> Vec<LocalicMap> {
        vec![
            LocalicMap::identity(&c2()),
            LocalicMap::identity(&c3()),
            LocalicMap::identity(&b4()),
            LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 0, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 1, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&c2(), &c3(), vec![0, 2]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&b4(), &c2(), vec![0, 0, 1, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&b4(), &c2(), vec![0, 1, 0, 1]).unwrap()),
            LocalicMap::from_hom(FrameHom::new(&c2(), &b4(), vec![0, 3]).unwrap()),
        ]
    }

    #[test]
    fn select_examples() {
        let f = c3();
        let zs = Selection::Zero.select(&f);
        assert_eq!(zs.len(), 2);
        assert!(zs[0].is_void() || zs[1].is_void());
        assert!(zs[0].is_whole() || zs[1].is_whole());
        let cs = Selection::Closed.select(&c2());
        assert_eq!(cs.len(), 2);
        let ro = Selection::RegOpen.select(&b4());
        assert_eq!(ro.len(), 4);
    }

    #[test]
    fn identity_is_a_gamma_map_for_every_selection() {
        for frame in [c2(), c3(), b4()] {
            let id = LocalicMap::identity(&frame);
            for kind in [GammaKind::Beta, GammaKind::Lambda] {
                let r = reflect(&frame, kind, IDEAL_COUNT_CAP).unwrap();
                for sel in Selection::STANDARD {
                    assert!(is_gamma_map(&id, sel, &r, &r).unwrap());
                    assert!(is_gamma_map_closure_form(&id, sel, &r, &r).unwrap());
                }
            }
        }
    }

    #[test]
    fn spot_failure_on_both_sides() {
        // f: C2 -> C3 with f(0) = m fails the open selection on both routes
        let f = LocalicMap::from_hom(FrameHom::new(&c3(), &c2(), vec![0, 0, 1]).unwrap());
        let rl = reflect(f.dom(), GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
        let rm = reflect(f.cod(), GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
        assert!(!is_gamma_map(&f, Selection::Open, &rl, &rm).unwrap());
        for mode in BetaMode::ALL {
            assert!(!is_beta_map_thm(&f, Selection::Open, mode).unwrap());
        }
        assert!(!map_class(&f, MapClass::CbPreserving));
        assert!(beta_witness(&f, Selection::Open).unwrap().is_some());
    }

    #[test]
    fn beta_oracle_equivalence_on_samples() {
        for f in sample_maps() {
            let rl = reflect(f.dom(), GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
            let rm = reflect(f.cod(), GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
            for sel in Selection::STANDARD {
                let defn = is_gamma_map(&f, sel, &rl, &rm).unwrap();
                assert_eq!(defn, is_gamma_map_closure_form(&f, sel, &rl, &rm).unwrap());
                for mode in BetaMode::ALL {
                    assert_eq!(
                        defn,
                        is_beta_map_thm(&f, sel, mode).unwrap(),
                        "mode {mode:?} disagrees on {sel:?} for {f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn lambda_oracle_equivalence_on_samples() {
        for f in sample_maps() {
            let rl = reflect(f.dom(), GammaKind::Lambda, IDEAL_COUNT_CAP).unwrap();
            let rm = reflect(f.cod(), GammaKind::Lambda, IDEAL_COUNT_CAP).unwrap();
            for sel in Selection::STANDARD {
                let defn = is_gamma_map(&f, sel, &rl, &rm).unwrap();
                for mode in LambdaMode::ALL {
                    assert_eq!(
                        defn,
                        is_lambda_map_thm(&f, sel, mode).unwrap(),
                        "mode {mode:?} disagrees on {sel:?} for {f:?}"
                    );
                }
                // a compact-reflection map is always a Lindelöf-reflection map
                if is_beta_map_thm(&f, sel, BetaMode::CondIII).unwrap() {
                    assert!(defn);
                }
            }
        }
    }

    #[test]
    fn selection_monotonicity() {
        let pairs = [
            (Selection::Zero, Selection::Closed),
            (Selection::Cozero, Selection::Open),
            (Selection::RegClosed, Selection::Closed),
            (Selection::RegOpen, Selection::Open),
        ];
        for f in sample_maps() {
            for (small, big) in pairs {
                assert!(small.contained_in(&big, f.cod()));
                if is_beta_map_thm(&f, big, BetaMode::CondIII).unwrap() {
                    assert!(
                        is_beta_map_thm(&f, small, BetaMode::CondIII).unwrap(),
                        "monotonicity failed on {f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn assertive_conditions_agree() {
        for f in sample_maps() {
            let rl = reflect(f.dom(), GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
            let rm = reflect(f.cod(), GammaKind::Beta, IDEAL_COUNT_CAP).unwrap();
            let cs = assertive_conditions(&f, &rl, &rm).unwrap();
            assert!(
                cs.iter().all(|&c| c == cs[0]),
                "assertive faces disagree: {cs:?} on {f:?}"
            );
        }
    }

    #[test]
    fn st_lambda_reductions() {
        for f in sample_maps() {
            for sel in Selection::STANDARD {
                // the cozero second family recovers the plain predicate
                assert_eq!(
                    is_st_lambda_map(&f, sel, Selection::Cozero).unwrap(),
                    is_lambda_map_thm(&f, sel, LambdaMode::CondIII).unwrap()
                );
                // the zero-zero instance recovers the compact predicate
                if matches!(sel, Selection::Zero) {
                    assert_eq!(
                        is_st_lambda_map(&f, Selection::Zero, Selection::Zero).unwrap(),
                        is_beta_map_thm(&f, Selection::Zero, BetaMode::CondIII).unwrap()
                    );
                }
            }
            // nearly-open trio
            assert_eq!(
                is_st_lambda_map(&f, Selection::Open, Selection::Open).unwrap(),
                map_class(&f, MapClass::NearlyOpen)
            );
            assert_eq!(
                is_st_lambda_map(&f, Selection::Cozero, Selection::Open).unwrap(),
                map_class(&f, MapClass::CoNearlyOpen)
            );
            assert_eq!(
                is_st_lambda_map(&f, Selection::RegOpen, Selection::Open).unwrap(),
                map_class(&f, MapClass::RoNearlyOpen)
            );
        }
    }

    #[test]
    fn custom_selection_complemented_guard() {
        static DENSE_ONLY: CustomSelection = CustomSelection {
            name: "dense_closed",
            complemented: false,
            pick: |frame| vec![Sublocale::whole(frame)],
        };
        let f = LocalicMap::identity(&c3());
        assert!(matches!(
            is_lambda_map_thm(&f, Selection::Custom(&DENSE_ONLY), LambdaMode::CondV),
            Err(Error::ModeRequiresComplemented)
        ));
        assert!(
            is_lambda_map_thm(&f, Selection::Custom(&DENSE_ONLY), LambdaMode::CondIV).unwrap()
        );
    }
}
