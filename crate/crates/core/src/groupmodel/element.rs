use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

/// One block's coordinate of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// Finitely supported map `Z -> F`; identity values are never stored.
    Shift(BTreeMap<i64, usize>),
    Linear(Vec<BigRational>),
    /// `(x, y, z)` with law `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')`.
    Heisenberg([BigRational; 3]),
}

impl Component {
    /// Drops identity values from a shift map.
    pub fn shift_from(entries: impl IntoIterator<Item = (i64, usize)>) -> Self {
        Component::Shift(entries.into_iter().filter(|&(_, v)| v != 0).collect())
    }

    pub fn as_shift(&self) -> Option<&BTreeMap<i64, usize>> {
        match self {
            Component::Shift(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_linear(&self) -> Option<&[BigRational]> {
        match self {
            Component::Linear(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_heisenberg(&self) -> Option<&[BigRational; 3]> {
        match self {
            Component::Heisenberg(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Shift(m) => {
                f.write_str("[")?;
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}:{v}")?;
                }
                f.write_str("]")
            }
            Component::Linear(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Component::Heisenberg([x, y, z]) => write!(f, "({x}, {y}, {z})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    components: Vec<Component>,
}

impl GroupElement {
    pub fn new(components: Vec<Component>) -> Self {
        GroupElement { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Component> {
        self.components
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{ ")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        f.write_str(" }")
    }
}
