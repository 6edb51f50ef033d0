use std::cmp::Ordering;
use std::fmt;

/// Variable families, in the fixed order used for monomial comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    Alpha,
    Beta,
    Aux,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::X, Family::Y, Family::Alpha, Family::Beta, Family::Aux];

    /// First slot and capacity of the family inside a packed monomial.
    pub const fn layout(self) -> (usize, usize) {
        match self {
            Family::X => (0, 16),
            Family::Y => (16, 8),
            Family::Alpha => (24, 16),
            Family::Beta => (40, 16),
            Family::Aux => (56, 8),
        }
    }

    pub const fn capacity(self) -> usize {
        self.layout().1
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Y => "y",
            Family::Alpha => "a",
            Family::Beta => "b",
            Family::Aux => "",
        }
    }

    const fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// Names of the auxiliary slots. `a` and `b` hold the specialized
/// one-parameter values of the alpha and beta families.
pub const AUX_NAMES: [&str; 8] = ["z", "w", "g", "t", "a", "b", "u", "v"];

/// Auxiliary slot index (1-based) for a named auxiliary variable.
pub fn aux_index(name: &str) -> Option<u16> {
    AUX_NAMES.iter().position(|n| *n == name).map(|p| p as u16 + 1)
}

/// An indeterminate `x_i`, `y_i`, `alpha_i`, `beta_i` or an auxiliary slot.
/// Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub family: Family,
    pub index: u16,
}

impl Variable {
    pub fn new(family: Family, index: u16) -> Self {
        assert!(
            index >= 1 && (index as usize) <= family.capacity(),
            "variable index {index} out of range for family {family:?}"
        );
        Variable { family, index }
    }

    pub fn x(i: usize) -> Self {
        Variable::new(Family::X, i as u16)
    }
    pub fn y(i: usize) -> Self {
        Variable::new(Family::Y, i as u16)
    }
    pub fn alpha(i: usize) -> Self {
        Variable::new(Family::Alpha, i as u16)
    }
    pub fn beta(i: usize) -> Self {
        Variable::new(Family::Beta, i as u16)
    }
    pub fn aux(name: &str) -> Self {
        let i = aux_index(name).unwrap_or_else(|| panic!("unknown auxiliary variable {name}"));
        Variable::new(Family::Aux, i)
    }

    pub fn slot(self) -> usize {
        self.family.layout().0 + self.index as usize - 1
    }

    pub fn from_slot(slot: usize) -> Variable {
        for f in Family::ALL {
            let (start, cap) = f.layout();
            if slot >= start && slot < start + cap {
                return Variable { family: f, index: (slot - start + 1) as u16 };
            }
        }
        panic!("slot {slot} outside monomial layout")
    }

    /// ASCII name: `x1`, `y2`, `a3` (alpha), `b4` (beta), or the aux name.
    pub fn name(self) -> String {
        match self.family {
            Family::Aux => AUX_NAMES[self.index as usize - 1].to_string(),
            f => format!("{}{}", f.prefix(), self.index),
        }
    }

    pub fn unicode_name(self) -> String {
        const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        let sub: String = self.index.to_string().chars().map(|c| SUB[c as usize - '0' as usize]).collect();
        match self.family {
            Family::X => format!("x{sub}"),
            Family::Y => format!("y{sub}"),
            Family::Alpha => format!("α{sub}"),
            Family::Beta => format!("β{sub}"),
            Family::Aux => match AUX_NAMES[self.index as usize - 1] {
                "g" => "γ".to_string(),
                "a" => "α".to_string(),
                "b" => "β".to_string(),
                other => other.to_string(),
            },
        }
    }

    /// Inverse of [`Variable::name`].
    pub fn parse(s: &str) -> Option<Variable> {
        if let Some(i) = aux_index(s) {
            return Some(Variable { family: Family::Aux, index: i });
        }
        let (head, tail) = s.split_at(1);
        let family = match head {
            "x" => Family::X,
            "y" => Family::Y,
            "a" => Family::Alpha,
            "b" => Family::Beta,
            _ => return None,
        };
        let index: u16 = tail.parse().ok()?;
        if index == 0 || index as usize > family.capacity() {
            return None;
        }
        Some(Variable { family, index })
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A set of families whose exponents count toward a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grading(u8);

impl Grading {
    pub const NONE: Grading = Grading(0);
    /// The default series grading: alpha and beta degree.
    pub const AB: Grading = Grading(Family::Alpha.bit() | Family::Beta.bit());
    pub const XY: Grading = Grading(Family::X.bit() | Family::Y.bit());
    pub const ALL: Grading = Grading(0x1f);

    pub fn of(families: &[Family]) -> Grading {
        Grading(families.iter().fold(0, |m, f| m | f.bit()))
    }

    pub fn contains(self, f: Family) -> bool {
        self.0 & f.bit() != 0
    }

    pub fn families(self) -> impl Iterator<Item = Family> {
        Family::ALL.into_iter().filter(move |f| self.contains(*f))
    }
}

impl Default for Grading {
    fn default() -> Self {
        Grading::AB
    }
}

pub const SLOTS: usize = 64;

/// Dense packed exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) [u8; SLOTS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; SLOTS]);

    pub fn var(v: Variable) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: u8) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[v.slot()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Variable, u8)]) -> Monomial {
        let mut m = Monomial::ONE;
        for &(v, e) in pairs {
            m.0[v.slot()] = m.0[v.slot()].checked_add(e).expect("exponent overflow");
        }
        m
    }

    pub fn exponent(&self, v: Variable) -> u8 {
        self.0[v.slot()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, g: Grading) -> u32 {
        if g == Grading::ALL {
            return self.degree();
        }
        g.families()
            .map(|f| {
                let (s, c) = f.layout();
                self.0[s..s + c].iter().map(|&e| e as u32).sum::<u32>()
            })
            .sum()
    }

    pub fn family_degree(&self, f: Family) -> u32 {
        let (s, c) = f.layout();
        self.0[s..s + c].iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; SLOTS];
        let mut overflow = false;
        for i in 0..SLOTS {
            out[i] = self.0[i].wrapping_add(other.0[i]);
            overflow |= out[i] < self.0[i];
        }
        assert!(!overflow, "exponent overflow");
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u8; SLOTS];
        for i in 0..SLOTS {
            out[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    /// Non-zero exponents in variable order.
    pub fn support(&self) -> impl Iterator<Item = (Variable, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(s, &e)| (Variable::from_slot(s), e))
    }

    /// Exponent vector of the x family restricted to `x_1..x_n`.
    pub fn x_exponents(&self, n: usize) -> Vec<u8> {
        self.0[..n].to_vec()
    }

    pub fn render(&self, unicode: bool) -> String {
        let mut parts = Vec::new();
        for (v, e) in self.support() {
            let name = if unicode { v.unicode_name() } else { v.name() };
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable in the family order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.render(false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for v in [Variable::x(3), Variable::y(1), Variable::alpha(12), Variable::beta(2), Variable::aux("w")] {
            assert_eq!(Variable::parse(&v.name()), Some(v));
        }
        assert_eq!(Variable::parse("a0"), None);
        assert_eq!(Variable::parse("q1"), None);
    }

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::var(Variable::x(1));
        let x2 = Monomial::var(Variable::x(2));
        let a2 = Monomial::var(Variable::alpha(2));
        let b1 = Monomial::var(Variable::beta(1));
        assert!(x1 > x2);
        assert!(a2 > b1);
        assert!(x1.mul(&x2) > x2.mul(&x2));
        assert!(Monomial::var_pow(Variable::beta(1), 2) > x1);
    }

    #[test]
    fn grading_degrees() {
        let m = Monomial::from_pairs(&[(Variable::x(1), 2), (Variable::alpha(1), 1), (Variable::beta(3), 2)]);
        assert_eq!(m.degree(), 5);
        assert_eq!(m.degree_in(Grading::AB), 3);
        assert_eq!(m.degree_in(Grading::XY), 2);
        assert_eq!(m.div(&Monomial::var(Variable::x(1))).unwrap().degree(), 4);
        assert!(m.div(&Monomial::var(Variable::x(2))).is_none());
    }
}
