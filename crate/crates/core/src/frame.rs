//! Finite frames and the element-level calculus.
//!
//! A finite frame is exactly a finite bounded distributive lattice: on a
//! finite carrier every join is finite, so the frame distributivity law
//! collapses to binary distributivity. Everything here is validated and
//! precomputed once at construction; a [`Frame`] is immutable afterwards and
//! safe to share across threads.

use crate::error::{Error, Result};
use crate::set::ElemSet;

/// Index of an element within its frame.
pub type Elem = usize;

/// A binary relation over one frame's elements.
///
/// `holds(b, a)` reads "b is below-related to a", e.g. `b ≺ a` for the
/// rather-below instance.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn holds(&self, below: Elem, above: Elem) -> bool {
        self.bits[below * self.n + above]
    }

    pub fn set(&mut self, below: Elem, above: Elem, value: bool) {
        self.bits[below * self.n + above] = value;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        (0..self.n)
            .flat_map(move |b| (0..self.n).map(move |a| (b, a)))
            .filter(|&(b, a)| self.holds(b, a))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&x| x).count()
    }

    /// True if every present pair factors through a present midpoint.
    pub fn is_interpolative(&self) -> bool {
        self.pairs()
            .all(|(b, a)| (0..self.n).any(|c| self.holds(b, c) && self.holds(c, a)))
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Per-element property flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElemFlags {
    pub complemented: bool,
    pub regular: bool,
    pub cozero: bool,
    pub dense: bool,
}

/// A validated finite frame with all derived tables precomputed.
pub struct Frame {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    arrow: Vec<Elem>,
    pstar: Vec<Elem>,
    bot: Elem,
    top: Elem,
    names: Option<Vec<String>>,
    rather: Relation,
    completely: Relation,
    cozero: Vec<bool>,
    // sep_closed[x][y]: the closed sublocales at x and y are completely
    // separated, i.e. some cozero pair u <= x, v <= y has u v join = 1.
    sep_closed: Vec<bool>,
}

impl Frame {
    /// Validates a raw order table and builds the frame.
    ///
    /// The table is checked to be a bounded lattice order satisfying binary
    /// distributivity; the first violated law is reported with a witness.
    pub fn validate(n: usize, leq: Vec<bool>) -> Result<Frame> {
        Self::validate_named(n, leq, None)
    }

    pub fn validate_named(n: usize, leq: Vec<bool>, names: Option<Vec<String>>) -> Result<Frame> {
        if n == 0 || leq.len() != n * n {
            return Err(Error::Invalid(format!(
                "order table must be a nonempty {n} x {n} square"
            )));
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(Error::Invalid("names length must equal n".into()));
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];

        for i in 0..n {
            if !le(i, i) {
                return Err(Error::NotAPoset {
                    reason: "not reflexive",
                    witness: (i, i, i),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(Error::NotAPoset {
                        reason: "not antisymmetric",
                        witness: (i, j, j),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    for k in 0..n {
                        if le(j, k) && !le(i, k) {
                            return Err(Error::NotAPoset {
                                reason: "not transitive",
                                witness: (i, j, k),
                            });
                        }
                    }
                }
            }
        }

        let bot = match (0..n).find(|&i| (0..n).all(|j| le(i, j))) {
            Some(b) => b,
            None => return Err(Error::Unbounded("bottom")),
        };
        let top = match (0..n).find(|&i| (0..n).all(|j| le(j, i))) {
            Some(t) => t,
            None => return Err(Error::Unbounded("top")),
        };

        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let glb = (0..n)
                    .filter(|&x| le(x, a) && le(x, b))
                    .find(|&m| (0..n).filter(|&x| le(x, a) && le(x, b)).all(|x| le(x, m)));
                match glb {
                    Some(m) => meet[a * n + b] = m,
                    None => return Err(Error::NotALattice(a, b, "meet")),
                }
                let lub = (0..n)
                    .filter(|&x| le(a, x) && le(b, x))
                    .find(|&j| (0..n).filter(|&x| le(a, x) && le(b, x)).all(|x| le(j, x)));
                match lub {
                    Some(j) => join[a * n + b] = j,
                    None => return Err(Error::NotALattice(a, b, "join")),
                }
            }
        }

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(Error::NotDistributive(a, b, c));
                    }
                }
            }
        }

        // Heyting arrow: a -> b is the join of { x | a /\ x <= b }; the set is
        // join-closed by distributivity, so the fold lands inside it.
        let mut arrow = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = bot;
                for x in 0..n {
                    if le(meet[a * n + x], b) {
                        acc = join[acc * n + x];
                    }
                }
                arrow[a * n + b] = acc;
            }
        }
        let pstar: Vec<Elem> = (0..n).map(|a| arrow[a * n + bot]).collect();

        let mut rather = Relation::new(n);
        for b in 0..n {
            for a in 0..n {
                rather.set(b, a, join[pstar[b] * n + a] == top);
            }
        }

        let completely = greatest_interpolative(&rather);

        let cozero: Vec<bool> = (0..n)
            .map(|a| {
                let mut acc = bot;
                for x in 0..n {
                    if completely.holds(x, a) {
                        acc = join[acc * n + x];
                    }
                }
                acc == a
            })
            .collect();

        let sep_closed = separation_table(n, top, &join, &cozero, &le);

        Ok(Frame {
            n,
            leq,
            meet,
            join,
            arrow,
            pstar,
            bot,
            top,
            names,
            rather,
            completely,
            cozero,
            sep_closed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bot(&self) -> Elem {
        self.bot
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    /// Heyting arrow `a -> b`, the largest x with `a /\ x <= b`.
    pub fn heyting_arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow[a * self.n + b]
    }

    /// Pseudocomplement `a* = a -> 0`.
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.pstar[a]
    }

    pub fn meet_of<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_of<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// The rather-below relation: `b ≺ a` iff `b* \/ a = 1`.
    pub fn rather_below(&self) -> &Relation {
        &self.rather
    }

    /// The completely-below relation, computed as the greatest interpolative
    /// subrelation of rather-below.
    pub fn completely_below(&self) -> &Relation {
        &self.completely
    }

    pub fn is_cozero(&self, a: Elem) -> bool {
        self.cozero[a]
    }

    pub fn cozero_elements(&self) -> Vec<Elem> {
        (0..self.n).filter(|&a| self.cozero[a]).collect()
    }

    /// Regular elements, i.e. elements of the form `x*`.
    pub fn regular_elements(&self) -> Vec<Elem> {
        (0..self.n).filter(|&a| self.is_regular(a)).collect()
    }

    pub fn is_complemented(&self, a: Elem) -> bool {
        self.join(a, self.pstar[a]) == self.top
    }

    pub fn is_regular(&self, a: Elem) -> bool {
        self.pstar[self.pstar[a]] == a
    }

    pub fn is_dense_elem(&self, a: Elem) -> bool {
        self.pstar[a] == self.bot
    }

    pub fn elem_flags(&self, a: Elem) -> ElemFlags {
        ElemFlags {
            complemented: self.is_complemented(a),
            regular: self.is_regular(a),
            cozero: self.cozero[a],
            dense: self.is_dense_elem(a),
        }
    }

    /// True iff the closed sublocales at `x` and `y` are completely separated:
    /// some cozero pair `u <= x`, `v <= y` joins to 1.
    pub fn closed_separated(&self, x: Elem, y: Elem) -> bool {
        self.sep_closed[x * self.n + y]
    }

    pub fn name(&self, a: Elem) -> String {
        match &self.names {
            Some(ns) => ns[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn set_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.n);
        self.names = Some(names);
    }

    /// Chain frame with `k >= 1` elements, indexed bottom to top.
    pub fn chain(k: usize) -> Frame {
        assert!(k >= 1);
        let leq = (0..k)
            .flat_map(|i| (0..k).map(move |j| i <= j))
            .collect();
        let names = match k {
            2 => Some(vec!["0".into(), "1".into()]),
            3 => Some(vec!["0".into(), "m".into(), "1".into()]),
            4 => Some(vec!["0".into(), "x".into(), "y".into(), "1".into()]),
            _ => None,
        };
        Frame::validate_named(k, leq, names).expect("chain is a frame")
    }

    /// The four-element Boolean frame 2 x 2, elements indexed as bitmasks.
    pub fn b4() -> Frame {
        let n = 4;
        let leq = (0..n)
            .flat_map(|i| (0..n).map(move |j| i & !j == 0))
            .collect();
        let names = Some(vec!["0".into(), "a".into(), "b".into(), "1".into()]);
        Frame::validate_named(n, leq, names).expect("2x2 is a frame")
    }

    /// Order isomorphism test (order isos of lattices preserve all structure).
    pub fn is_isomorphic(&self, other: &Frame) -> bool {
        if self.n != other.n {
            return false;
        }
        let profile = |f: &Frame, a: Elem| {
            let down = f.elems().filter(|&x| f.leq(x, a)).count();
            let up = f.elems().filter(|&x| f.leq(a, x)).count();
            (down, up)
        };
        let mine: Vec<_> = self.elems().map(|a| profile(self, a)).collect();
        let theirs: Vec<_> = other.elems().map(|a| profile(other, a)).collect();
        {
            let mut m = mine.clone();
            let mut t = theirs.clone();
            m.sort_unstable();
            t.sort_unstable();
            if m != t {
                return false;
            }
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        fn assign(
            f: &Frame,
            g: &Frame,
            mine: &[(usize, usize)],
            theirs: &[(usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            a: usize,
        ) -> bool {
            if a == f.n {
                return true;
            }
            for b in 0..g.n {
                if used[b] || mine[a] != theirs[b] {
                    continue;
                }
                let ok = (0..a).all(|x| {
                    f.leq(x, a) == g.leq(map[x], b) && f.leq(a, x) == g.leq(b, map[x])
                });
                if ok {
                    map[a] = b;
                    used[b] = true;
                    if assign(f, g, mine, theirs, map, used, a + 1) {
                        return true;
                    }
                    used[b] = false;
                    map[a] = usize::MAX;
                }
            }
            false
        }
        assign(self, other, &mine, &theirs, &mut map, &mut used, 0)
    }

    /// Rebuilds this frame with a different completely-below table, recomputing
    /// the cozero part and separation table from it. Fault-injection hook for
    /// the harness self-tests.
    pub(crate) fn with_completely_below_for_tests(&self, completely: Relation) -> Frame {
        let cozero: Vec<bool> = (0..self.n)
            .map(|a| {
                let xs = (0..self.n).filter(|&x| completely.holds(x, a));
                self.join_of(xs) == a
            })
            .collect();
        let le = |a: usize, b: usize| self.leq[a * self.n + b];
        let sep_closed = separation_table(self.n, self.top, &self.join, &cozero, &le);
        Frame {
            n: self.n,
            leq: self.leq.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            arrow: self.arrow.clone(),
            pstar: self.pstar.clone(),
            bot: self.bot,
            top: self.top,
            names: self.names.clone(),
            rather: self.rather.clone(),
            completely,
            cozero,
            sep_closed,
        }
    }

    pub(crate) fn members_full(&self) -> ElemSet {
        ElemSet::full(self.n)
    }
}

impl std::fmt::Debug for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Frame(n={})", self.n)
    }
}

/// Greatest interpolative subrelation: prune pairs without a midpoint until
/// nothing changes.
fn greatest_interpolative(start: &Relation) -> Relation {
    let n = start.n;
    let mut rel = start.clone();
    loop {
        let mut next = Relation::new(n);
        let mut changed = false;
        for (b, a) in rel.pairs() {
            if (0..n).any(|c| rel.holds(b, c) && rel.holds(c, a)) {
                next.set(b, a, true);
            } else {
                changed = true;
            }
        }
        if !changed {
            return rel;
        }
        rel = next;
    }
}

fn separation_table(
    n: usize,
    top: usize,
    join: &[Elem],
    cozero: &[bool],
    le: &dyn Fn(usize, usize) -> bool,
) -> Vec<bool> {
    let coz: Vec<usize> = (0..n).filter(|&a| cozero[a]).collect();
    let mut sep = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            sep[x * n + y] = coz.iter().any(|&u| {
                le(u, x) && coz.iter().any(|&v| le(v, y) && join[u * n + v] == top)
            });
        }
    }
    sep
}
