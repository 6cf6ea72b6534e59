//! The coframe S(L) of sublocales of a finite frame.
//!
//! A sublocale is stored as its member set over the parent frame. Meets are
//! intersections, joins are meet-closures of unions, and the open/closed
//! complement pair at each element gives the formula fast paths for
//! supplements and differences. General supplements and co-Heyting
//! differences fall back to a scan of the enumerated S(L), guarded by a cap.

use crate::error::{Error, Result};
use crate::frame::{Elem, Frame};
use crate::set::ElemSet;
use std::sync::Arc;

/// Default cap on the frame size for whole-S(L) enumeration.
pub const SUBLOCALE_ENUM_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublocale {
    // Ord derives member-set order (frames compared by pointer are skipped:
    // mixing frames in one ordered collection is a bug caught elsewhere).
    members: ElemSet,
    #[doc(hidden)]
    frame: ByAddress,
}

/// Pointer-identity wrapper so sublocales can be hashed and compared cheaply.
#[derive(Clone)]
struct ByAddress(Arc<Frame>);

impl PartialEq for ByAddress {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}
impl Eq for ByAddress {}
impl std::hash::Hash for ByAddress {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (Arc::as_ptr(&self.0) as usize).hash(state);
    }
}
impl PartialOrd for ByAddress {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByAddress {
    fn cmp(&self, _other: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}

/// What a member set looks like, with the witnessing element where one exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SublocaleKind {
    Clopen(Elem),
    Zero(Elem),
    Cozero(Elem),
    RegularClosed(Elem),
    RegularOpen(Elem),
    Closed(Elem),
    Open(Elem),
    Generic,
}

impl Sublocale {
    /// Closed sublocale `c(a)`, the up-set of `a`.
    pub fn closed(frame: &Arc<Frame>, a: Elem) -> Sublocale {
        let members = ElemSet::from_iter(frame.n(), frame.elems().filter(|&x| frame.leq(a, x)));
        Sublocale {
            members,
            frame: ByAddress(frame.clone()),
        }
    }

    /// Open sublocale `o(a)`, the image of `a -> (-)`.
    pub fn open(frame: &Arc<Frame>, a: Elem) -> Sublocale {
        let members = ElemSet::from_iter(
            frame.n(),
            frame.elems().filter(|&x| frame.heyting_arrow(a, x) == x),
        );
        Sublocale {
            members,
            frame: ByAddress(frame.clone()),
        }
    }

    /// The void sublocale `{1}`.
    pub fn void(frame: &Arc<Frame>) -> Sublocale {
        Sublocale {
            members: ElemSet::singleton(frame.n(), frame.top()),
            frame: ByAddress(frame.clone()),
        }
    }

    /// The whole frame as the top of S(L).
    pub fn whole(frame: &Arc<Frame>) -> Sublocale {
        Sublocale {
            members: frame.members_full(),
            frame: ByAddress(frame.clone()),
        }
    }

    /// Wraps a member set after checking the sublocale laws.
    pub fn from_members(frame: &Arc<Frame>, members: ElemSet) -> Result<Sublocale> {
        if members.universe_len() != frame.n() {
            return Err(Error::Invalid("member set has wrong universe".into()));
        }
        if !members.contains(frame.top()) {
            return Err(Error::Invalid("sublocale must contain the top".into()));
        }
        for s in members.iter() {
            for t in members.iter() {
                if !members.contains(frame.meet(s, t)) {
                    return Err(Error::Invalid(format!(
                        "member set not meet-closed at ({s}, {t})"
                    )));
                }
            }
            for x in frame.elems() {
                if !members.contains(frame.heyting_arrow(x, s)) {
                    return Err(Error::Invalid(format!(
                        "member set not arrow-closed at ({x} -> {s})"
                    )));
                }
            }
        }
        Ok(Sublocale {
            members,
            frame: ByAddress(frame.clone()),
        })
    }

    pub(crate) fn from_members_unchecked(frame: &Arc<Frame>, members: ElemSet) -> Sublocale {
        debug_assert!(Sublocale::from_members(frame, members.clone()).is_ok());
        Sublocale {
            members,
            frame: ByAddress(frame.clone()),
        }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame.0
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        false // a sublocale always contains the top
    }

    pub fn is_void(&self) -> bool {
        self.members.count() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.count() == self.frame.0.n()
    }

    /// The meet of all members; sublocales are meet-closed so this is the
    /// least member.
    pub fn minimum(&self) -> Elem {
        self.frame.0.meet_of(self.members.iter())
    }

    pub fn same_frame(&self, other: &Sublocale) -> bool {
        self.frame == other.frame
    }

    pub fn subset_of(&self, other: &Sublocale) -> bool {
        debug_assert!(self.same_frame(other));
        self.members.is_subset(&other.members)
    }

    /// Intersection, the meet in S(L).
    pub fn meet_with(&self, other: &Sublocale) -> Result<Sublocale> {
        if !self.same_frame(other) {
            return Err(Error::FrameMismatch);
        }
        Ok(Sublocale {
            members: self.members.intersect(&other.members),
            frame: self.frame.clone(),
        })
    }

    pub fn disjoint(&self, other: &Sublocale) -> Result<bool> {
        Ok(self.meet_with(other)?.is_void())
    }

    /// Join in S(L): the meet-closure of the union. Arrow-closure follows and
    /// is asserted in debug builds.
    pub fn join_with(&self, other: &Sublocale) -> Result<Sublocale> {
        if !self.same_frame(other) {
            return Err(Error::FrameMismatch);
        }
        join_members(&self.frame.0, [&self.members, &other.members]).map(|members| Sublocale {
            members,
            frame: self.frame.clone(),
        })
    }

    /// Closure: the smallest closed sublocale containing this one.
    pub fn closure(&self) -> Sublocale {
        Sublocale::closed(&self.frame.0, self.minimum())
    }

    /// Interior: the largest open sublocale inside this one.
    pub fn interior(&self) -> Sublocale {
        let f = &self.frame.0;
        let inside = f
            .elems()
            .filter(|&x| Sublocale::open(f, x).members.is_subset(&self.members));
        Sublocale::open(f, f.join_of(inside))
    }

    /// Witness detection; tags are recomputed from the member set, never cached.
    pub fn closed_witness(&self) -> Option<Elem> {
        let m = self.minimum();
        if Sublocale::closed(&self.frame.0, m).members == self.members {
            Some(m)
        } else {
            None
        }
    }

    pub fn open_witness(&self) -> Option<Elem> {
        let f = &self.frame.0;
        f.elems().find(|&a| Sublocale::open(f, a).members == self.members)
    }

    pub fn kind(&self) -> SublocaleKind {
        let f = &self.frame.0;
        let closed = self.closed_witness();
        let open = self.open_witness();
        match (closed, open) {
            (Some(c), Some(_)) => SublocaleKind::Clopen(c),
            (Some(c), None) => {
                if f.is_cozero(c) {
                    SublocaleKind::Zero(c)
                } else if f.is_regular(c) {
                    SublocaleKind::RegularClosed(c)
                } else {
                    SublocaleKind::Closed(c)
                }
            }
            (None, Some(o)) => {
                if f.is_cozero(o) {
                    SublocaleKind::Cozero(o)
                } else if f.is_regular(o) {
                    SublocaleKind::RegularOpen(o)
                } else {
                    SublocaleKind::Open(o)
                }
            }
            (None, None) => SublocaleKind::Generic,
        }
    }

    /// Supplement `S# = L \ S`. Open and closed sublocales take the complement
    /// formula; anything else scans the enumerated S(L).
    pub fn supplement(&self, cap: usize) -> Result<Sublocale> {
        let f = &self.frame.0;
        if let Some(a) = self.open_witness() {
            return Ok(Sublocale::closed(f, a));
        }
        if let Some(a) = self.closed_witness() {
            return Ok(Sublocale::open(f, a));
        }
        Sublocale::whole(f).co_heyting_diff(self, cap)
    }

    /// Co-Heyting difference `self \ other`: the least A with self <= other v A.
    pub fn co_heyting_diff(&self, other: &Sublocale, cap: usize) -> Result<Sublocale> {
        if !self.same_frame(other) {
            return Err(Error::FrameMismatch);
        }
        let f = &self.frame.0;
        let all = enumerate_sublocales(f, cap)?;
        let mut acc = f.members_full();
        for a in &all {
            let joined = join_members(f, [&other.members, &a.members])?;
            if self.members.is_subset(&joined) {
                acc = acc.intersect(&a.members);
            }
        }
        // S(L) is a coframe, so the intersection of the candidates is itself
        // a candidate; wrap without re-checking.
        Ok(Sublocale::from_members_unchecked(f, acc))
    }

    /// Complete separation: both sides contained in disjoint zero sublocales.
    /// `c(u) >= S` iff `u <= /\S`, so this reduces to the precomputed
    /// closed-pair table of the frame.
    pub fn completely_separated(&self, other: &Sublocale) -> Result<bool> {
        if !self.same_frame(other) {
            return Err(Error::FrameMismatch);
        }
        Ok(self.frame.0.closed_separated(self.minimum(), other.minimum()))
    }

    pub fn display(&self) -> String {
        let f = &self.frame.0;
        let mut names: Vec<String> = self.members.iter().map(|x| f.name(x)).collect();
        names.sort();
        format!("{{{}}}", names.join(","))
    }
}

impl std::fmt::Debug for Sublocale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sublocale{:?}", self.members)
    }
}

fn join_members<'a, I>(frame: &Arc<Frame>, parts: I) -> Result<ElemSet>
where
    I: IntoIterator<Item = &'a ElemSet>,
{
    let mut acc = ElemSet::empty(frame.n());
    for p in parts {
        if p.universe_len() != frame.n() {
            return Err(Error::FrameMismatch);
        }
        acc = acc.union(p);
    }
    acc.insert(frame.top());
    loop {
        let mut grew = false;
        let cur: Vec<Elem> = acc.iter().collect();
        for &s in &cur {
            for &t in &cur {
                let m = frame.meet(s, t);
                if !acc.contains(m) {
                    acc.insert(m);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    debug_assert!(
        acc.iter().all(|s| frame
            .elems()
            .all(|x| acc.contains(frame.heyting_arrow(x, s)))),
        "join of sublocales must be arrow-closed"
    );
    Ok(acc)
}

/// Joins a list of sublocales of one frame.
pub fn join_all(frame: &Arc<Frame>, items: &[Sublocale]) -> Result<Sublocale> {
    for s in items {
        if !Arc::ptr_eq(s.frame(), frame) {
            return Err(Error::FrameMismatch);
        }
    }
    let members = join_members(frame, items.iter().map(|s| s.members()))?;
    Ok(Sublocale::from_members_unchecked(frame, members))
}

/// Every sublocale of the frame, each exactly once, in canonical member-set
/// order. Guarded: refuses frames larger than `cap`.
pub fn enumerate_sublocales(frame: &Arc<Frame>, cap: usize) -> Result<Vec<Sublocale>> {
    let n = frame.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "sublocale enumeration",
            cap,
            got: n,
            unit: "elements",
        });
    }
    let rest: Vec<Elem> = frame.elems().filter(|&x| x != frame.top()).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << rest.len()) {
        let mut members = ElemSet::singleton(n, frame.top());
        for (i, &x) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                members.insert(x);
            }
        }
        let meet_closed = members.iter().all(|s| {
            members
                .iter()
                .all(|t| members.contains(frame.meet(s, t)))
        });
        if !meet_closed {
            continue;
        }
        let arrow_closed = members
            .iter()
            .all(|s| frame.elems().all(|x| members.contains(frame.heyting_arrow(x, s))));
        if !arrow_closed {
            continue;
        }
        out.push(Sublocale {
            members,
            frame: ByAddress(frame.clone()),
        });
    }
    out.sort();
    Ok(out)
}
