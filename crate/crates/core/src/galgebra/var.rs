use std::fmt;

use arrayvec::ArrayString;

use crate::error::{Error, Result};

/// Short lowercase name of a variable family (`x`, `th`, `m`, `t`, ...).
///
/// Stored inline so that [`GVar`] stays `Copy`; ordering is lexicographic on
/// the name, which fixes the canonical monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family(ArrayString<8>);

impl Family {
    pub fn new(name: &str) -> Result<Self> {
        let ok = !name.is_empty() && name.bytes().all(|b| b.is_ascii_lowercase()) && !name.starts_with('d');
        if !ok {
            return Err(Error::InvalidPresentation(format!(
                "family name `{name}` must be lowercase letters not starting with `d`"
            )));
        }
        ArrayString::from(name)
            .map(Family)
            .map_err(|_| Error::InvalidPresentation(format!("family name `{name}` is too long")))
    }

    pub fn as_str(&self) -> &str {
        self.0.as_str()
    }

    pub fn x() -> Self {
        Family(ArrayString::from("x").unwrap())
    }

    pub fn theta() -> Self {
        Family(ArrayString::from("th").unwrap())
    }

    pub fn m() -> Self {
        Family(ArrayString::from("m").unwrap())
    }

    pub fn t() -> Self {
        Family(ArrayString::from("t").unwrap())
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A graded generator `d^depth family_site` of ℤ-degree `grade`.
///
/// Within a presentation `(family, site, depth)` identifies the variable and
/// `grade` is determined by it, so the derived ordering is the canonical
/// lexicographic order on `(family, site, depth)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GVar {
    family: Family,
    site: u32,
    depth: u32,
    grade: i32,
}

pub type VarKey = (Family, u32, u32);

impl GVar {
    pub fn new(family: Family, site: u32, depth: u32, grade: i32) -> Self {
        GVar { family, site, depth, grade }
    }

    /// `d^depth x_site` with grade equal to its depth.
    pub fn x(site: u32, depth: u32) -> Self {
        GVar::new(Family::x(), site, depth, depth as i32)
    }

    /// The odd coordinate `θ^site` of grade one.
    pub fn theta(site: u32) -> Self {
        GVar::new(Family::theta(), site, 0, 1)
    }

    /// `δ^depth m_site` with grade equal to its depth.
    pub fn m(site: u32, depth: u32) -> Self {
        GVar::new(Family::m(), site, depth, depth as i32)
    }

    /// The even infinitesimal parameter `t`.
    pub fn t() -> Self {
        GVar::new(Family::t(), 0, 0, 0)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn site(&self) -> u32 {
        self.site
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn grade(&self) -> i32 {
        self.grade
    }

    pub fn is_odd(&self) -> bool {
        self.grade.rem_euclid(2) == 1
    }

    pub fn key(&self) -> VarKey {
        (self.family, self.site, self.depth)
    }

    /// The same coordinate one differential deeper, grade shifted by `step`.
    pub fn deeper(&self, step: i32) -> Self {
        GVar::new(self.family, self.site, self.depth + 1, self.grade + step)
    }
}

impl fmt::Display for GVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depth > 0 {
            write!(f, "d{}", self.depth)?;
        }
        write!(f, "{}{}", self.family, self.site)
    }
}

impl fmt::Debug for GVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}:{}", self.grade)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_are_validated() {
        assert!(Family::new("x").is_ok());
        assert!(Family::new("th").is_ok());
        assert!(Family::new("dx").is_err());
        assert!(Family::new("X").is_err());
        assert!(Family::new("").is_err());
        assert!(Family::new("abcdefghi").is_err());
    }

    #[test]
    fn canonical_order_is_family_site_depth() {
        let a = GVar::x(1, 2);
        let b = GVar::x(2, 0);
        let c = GVar::theta(1);
        assert!(a < b);
        assert!(c < a);
        assert!(GVar::x(1, 0) < GVar::x(1, 1));
        assert_eq!(GVar::x(2, 1).to_string(), "d1x2");
        assert_eq!(GVar::theta(3).to_string(), "th3");
    }
}
