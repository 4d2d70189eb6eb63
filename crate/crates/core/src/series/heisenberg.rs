//! The seven coordinate subgroups of a Heisenberg block.

use std::fmt;

/// Closed, α-stable coordinate subgroups. The `XY` plane is missing because
/// it is not closed under the group law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeisSub {
    Trivial,
    Z,
    X,
    Y,
    XZ,
    YZ,
    Whole,
}

impl HeisSub {
    pub const ALL: [HeisSub; 7] = [
        HeisSub::Trivial,
        HeisSub::Z,
        HeisSub::X,
        HeisSub::Y,
        HeisSub::XZ,
        HeisSub::YZ,
        HeisSub::Whole,
    ];

    /// Which of the `(x, y, z)` coordinates may be nonzero.
    pub fn axes(self) -> [bool; 3] {
        match self {
            HeisSub::Trivial => [false, false, false],
            HeisSub::Z => [false, false, true],
            HeisSub::X => [true, false, false],
            HeisSub::Y => [false, true, false],
            HeisSub::XZ => [true, false, true],
            HeisSub::YZ => [false, true, true],
            HeisSub::Whole => [true, true, true],
        }
    }

    pub fn dim(self) -> usize {
        self.axes().iter().filter(|&&a| a).count()
    }

    pub fn is_subset_of(self, o: HeisSub) -> bool {
        self.axes().iter().zip(o.axes()).all(|(&a, b)| !a || b)
    }

    pub fn is_abelian(self) -> bool {
        self != HeisSub::Whole
    }

    /// Conjugating `(u, v, w)` by `(a, b, c)` gives `(u, v, w + a v - b u)`,
    /// so a coordinate subgroup is normal iff it contains `Z` or is trivial.
    pub fn is_normal_in_whole(self) -> bool {
        self == HeisSub::Trivial || self.axes()[2]
    }

    pub fn is_normal_in(self, o: HeisSub) -> bool {
        self.is_subset_of(o) && (o.is_abelian() || self.is_normal_in_whole())
    }

    /// Sum of the weights `(a, b, a + b)` over the present axes.
    pub fn weight(self, a: u32, b: u32) -> u32 {
        let w = [a, b, a + b];
        self.axes()
            .iter()
            .zip(w)
            .filter(|(&on, _)| on)
            .map(|(_, w)| w)
            .sum()
    }

    /// Does `o / self` have a compact open subgroup normal in it? Only the
    /// full nonabelian group over the trivial subgroup fails.
    pub fn quotient_is_special(self, o: HeisSub) -> bool {
        !(self == HeisSub::Trivial && o == HeisSub::Whole)
    }

    /// Maximal chains `lower = c_0 < ... < c_k = upper` through dimension
    /// steps of one, each normal in the next (`normal_in_whole = false`) or
    /// in the whole group. Enumeration order puts `Z` and `XZ` first.
    pub fn chains(self, upper: HeisSub, normal_in_whole: bool) -> Vec<Vec<HeisSub>> {
        let mut out = Vec::new();
        let mut path = vec![self];
        fn rec(
            cur: HeisSub,
            upper: HeisSub,
            nw: bool,
            path: &mut Vec<HeisSub>,
            out: &mut Vec<Vec<HeisSub>>,
        ) {
            if cur == upper {
                out.push(path.clone());
                return;
            }
            for next in HeisSub::ALL {
                if next.dim() != cur.dim() + 1 || !cur.is_subset_of(next) || !next.is_subset_of(upper) {
                    continue;
                }
                let ok = if nw {
                    next.is_normal_in_whole()
                } else {
                    cur.is_normal_in(next)
                };
                if ok {
                    path.push(next);
                    rec(next, upper, nw, path, out);
                    path.pop();
                }
            }
        }
        rec(self, upper, normal_in_whole, &mut path, &mut out);
        out
    }

    /// Weight of the single axis added by a one-dimensional step.
    pub fn step_weight(self, upper: HeisSub, a: u32, b: u32) -> u32 {
        upper.weight(a, b) - self.weight(a, b)
    }
}

impl fmt::Display for HeisSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeisSub::Trivial => "1",
            HeisSub::Z => "Z",
            HeisSub::X => "X",
            HeisSub::Y => "Y",
            HeisSub::XZ => "XZ",
            HeisSub::YZ => "YZ",
            HeisSub::Whole => "H",
        })
    }
}
