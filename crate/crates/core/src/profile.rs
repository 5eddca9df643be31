//! Named constant sets that parameterise every lemma operation.
//!
//! The `paper` profile carries the published constants. Its size
//! preconditions (graphs with `eps^(-10 d^2)` vertices and worse) cannot be
//! met by any graph that fits in memory, so operations run in it will mostly
//! report precondition failures. The `demo-small` profile shrinks the
//! constants so every branch of every operation fires on graphs with a few
//! hundred vertices. In demo mode numeric size and magnitude preconditions
//! are relaxed; structural ones (house-freeness, `x <= y`) never are.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::rational::{self, Rational};

/// Whether numeric preconditions are enforced literally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Paper,
    Demo,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("unknown profile {0:?} (expected `demo-small` or `paper`)")]
    UnknownName(String),
    #[error("unknown constant {0:?}")]
    UnknownSymbol(String),
    #[error("bad override {0:?}: expected symbol=value")]
    BadOverride(String),
    #[error("constant {symbol} = {value} is out of range: {reason}")]
    OutOfRange {
        symbol: String,
        value: String,
        reason: &'static str,
    },
    #[error(transparent)]
    Rational(#[from] rational::ParseRationalError),
}

/// Every symbol a profile must define. `c` is the first-round sparsity
/// constant, `c2` the second-round one; `d`, `t`, `a` are integer exponents.
pub const SYMBOLS: [&str; 8] = ["d", "c", "c2", "eta", "xi", "theta", "t", "a"];

const INTEGER_SYMBOLS: [&str; 3] = ["d", "t", "a"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantsProfile {
    name: String,
    mode: Mode,
    entries: BTreeMap<String, Rational>,
}

impl ConstantsProfile {
    pub const DEMO_SMALL: &'static str = "demo-small";
    pub const PAPER: &'static str = "paper";

    /// Small constants that make every branch reachable at `n <= 512`.
    pub fn demo_small() -> Self {
        let entries = [
            ("d", rational::int(2)),
            ("c", rational::ratio(1, 4)),
            ("c2", rational::ratio(1, 4)),
            ("eta", rational::ratio(1, 8)),
            ("xi", rational::ratio(1, 16)),
            ("theta", rational::ratio(1, 8)),
            ("t", rational::int(2)),
            ("a", rational::int(4)),
        ];
        Self::from_entries(Self::DEMO_SMALL, Mode::Demo, entries)
    }

    /// The published constants: `d = 40`, `c = 2^-8`, `c2 = 4^-6`,
    /// `eta = 2^-5`, `xi = c^16`, `t = 36 d^2`, `a = 2 d t`. `theta` is the
    /// guarantee of the imported restricted-subgraph theorem at `xi`, which
    /// is not explicit; `2^-40` stands in for it.
    pub fn paper() -> Self {
        let d = 40u64;
        let t = 36 * d * d;
        let a = 2 * d * t;
        let c = rational::pow2(-8);
        let entries = [
            ("d", rational::int(d as usize)),
            ("c", c.clone()),
            ("c2", rational::pow2(-12)),
            ("eta", rational::pow2(-5)),
            ("xi", rational::pow(&c, 16)),
            ("theta", rational::pow2(-40)),
            ("t", rational::int(t as usize)),
            ("a", rational::int(a as usize)),
        ];
        Self::from_entries(Self::PAPER, Mode::Paper, entries)
    }

    fn from_entries<const N: usize>(name: &str, mode: Mode, entries: [(&str, Rational); N]) -> Self {
        ConstantsProfile {
            name: name.to_string(),
            mode,
            entries: entries
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    pub fn by_name(name: &str) -> Result<Self, ProfileError> {
        match name {
            Self::DEMO_SMALL => Ok(Self::demo_small()),
            Self::PAPER => Ok(Self::paper()),
            other => Err(ProfileError::UnknownName(other.to_string())),
        }
    }

    /// Parses `name`, `name:sym=val,sym=val`, or bare `sym=val,...` (applied
    /// to `demo-small`). Any override turns the profile into demo mode.
    pub fn parse(spec: &str) -> Result<Self, ProfileError> {
        let spec = spec.trim();
        let (base, overrides) = match spec.split_once(':') {
            Some((b, o)) => (b.trim(), o.trim()),
            None if spec.contains('=') => (Self::DEMO_SMALL, spec),
            None => (spec, ""),
        };
        let mut profile = Self::by_name(base)?;
        if !overrides.is_empty() {
            profile = profile.with_overrides(overrides)?;
        }
        Ok(profile)
    }

    pub fn with_overrides(mut self, overrides: &str) -> Result<Self, ProfileError> {
        for item in overrides.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (sym, val) = item
                .split_once('=')
                .ok_or_else(|| ProfileError::BadOverride(item.to_string()))?;
            let sym = sym.trim();
            if !SYMBOLS.contains(&sym) {
                return Err(ProfileError::UnknownSymbol(sym.to_string()));
            }
            self.entries.insert(sym.to_string(), rational::parse(val)?);
        }
        self.mode = Mode::Demo;
        self.name = format!("{}+{}", self.name, overrides.replace(' ', ""));
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        let bad = |symbol: &str, value: &Rational, reason| ProfileError::OutOfRange {
            symbol: symbol.to_string(),
            value: rational::format(value),
            reason,
        };
        for sym in SYMBOLS {
            let Some(v) = self.entries.get(sym) else {
                return Err(ProfileError::UnknownSymbol(sym.to_string()));
            };
            if !v.is_positive() {
                return Err(bad(sym, v, "must be positive"));
            }
            if INTEGER_SYMBOLS.contains(&sym) {
                if !v.is_integer() || v.to_integer().to_u64().is_none() {
                    return Err(bad(sym, v, "must be a positive integer"));
                }
            } else if *v >= Rational::one() {
                return Err(bad(sym, v, "must be below 1"));
            }
        }
        if self.d() < 2 {
            return Err(bad("d", &self.entries["d"], "must be at least 2"));
        }
        if self.mode == Mode::Paper && self.d() < 40 {
            return Err(bad("d", &self.entries["d"], "paper mode needs d >= 40"));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_paper(&self) -> bool {
        self.mode == Mode::Paper
    }

    pub fn entries(&self) -> &BTreeMap<String, Rational> {
        &self.entries
    }

    pub fn get(&self, symbol: &str) -> &Rational {
        &self.entries[symbol]
    }

    fn integer(&self, symbol: &str) -> u64 {
        self.entries[symbol]
            .to_integer()
            .to_u64()
            .expect("validated integer constant")
    }

    pub fn d(&self) -> u64 {
        self.integer("d")
    }

    pub fn t(&self) -> u64 {
        self.integer("t")
    }

    pub fn a(&self) -> u64 {
        self.integer("a")
    }

    pub fn c(&self) -> &Rational {
        self.get("c")
    }

    pub fn c2(&self) -> &Rational {
        self.get("c2")
    }

    pub fn eta(&self) -> &Rational {
        self.get("eta")
    }

    pub fn xi(&self) -> &Rational {
        self.get("xi")
    }

    pub fn theta(&self) -> &Rational {
        self.get("theta")
    }

    /// Entries rendered as `"num/den"` strings, in symbol order.
    pub fn rendered_entries(&self) -> BTreeMap<String, String> {
        self.entries
            .iter()
            .map(|(k, v)| (k.clone(), rational::format(v)))
            .collect()
    }
}

impl Default for ConstantsProfile {
    fn default() -> Self {
        Self::demo_small()
    }
}

impl fmt::Display for ConstantsProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (", self.name)?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={}", rational::Show(v))?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn builtin_profiles_validate() {
        ConstantsProfile::demo_small().validate().unwrap();
        let paper = ConstantsProfile::paper();
        paper.validate().unwrap();
        assert_eq!(paper.d(), 40);
        assert_eq!(*paper.c(), rational::pow2(-8));
        assert_eq!(*paper.eta(), ratio(1, 32));
        assert_eq!(*paper.xi(), rational::pow2(-128));
        assert_eq!(paper.t(), 57_600);
        assert_eq!(paper.a(), 4_608_000);
    }

    #[test]
    fn overrides_switch_to_demo_mode() {
        let p = ConstantsProfile::parse("paper:d=3,c=1/8").unwrap();
        assert_eq!(p.mode(), Mode::Demo);
        assert_eq!(p.d(), 3);
        assert_eq!(*p.c(), ratio(1, 8));
        let q = ConstantsProfile::parse("a=5").unwrap();
        assert_eq!(q.a(), 5);
        assert_eq!(q.d(), 2);
    }

    #[test]
    fn rejects_bad_profiles() {
        assert!(ConstantsProfile::parse("huge").is_err());
        assert!(ConstantsProfile::parse("demo-small:q=1").is_err());
        assert!(ConstantsProfile::parse("demo-small:d=1/2").is_err());
        assert!(ConstantsProfile::parse("demo-small:c=3/2").is_err());
        assert!(ConstantsProfile::parse("demo-small:d=1").is_err());
        assert!(ConstantsProfile::parse("demo-small:eta").is_err());
    }
}
