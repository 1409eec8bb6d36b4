use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    V,
    Vd,
    M,
    Md,
    Mc,
    Vc,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::V => "V",
            Family::Vd => "Vd",
            Family::M => "M",
            Family::Md => "Md",
            Family::Mc => "Mc",
            Family::Vc => "Vc",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "V" => Family::V,
            "Vd" => Family::Vd,
            "M" => Family::M,
            "Md" => Family::Md,
            "Mc" => Family::Mc,
            "Vc" => Family::Vc,
            _ => return Err(Error::InvalidSpec(format!("unknown family `{s}`"))),
        })
    }
}

/// A local space on the Alfeld split; `r` is the polynomial degree of its members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    pub family: Family,
    pub ring: bool,
    pub k: usize,
    pub r: i64,
    pub n: usize,
}

impl SpaceSpec {
    pub fn new(family: Family, ring: bool, k: usize, r: i64, n: usize) -> Result<Self> {
        let s = SpaceSpec { family, ring, k, r, n };
        s.validate()?;
        Ok(s)
    }

    pub fn plain(family: Family, k: usize, r: i64, n: usize) -> Result<Self> {
        Self::new(family, false, k, r, n)
    }

    pub fn ring(family: Family, k: usize, r: i64, n: usize) -> Result<Self> {
        Self::new(family, true, k, r, n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.n == 0 || self.n > 4 {
            return bad(format!("dimension {} outside 1..=4", self.n));
        }
        if self.k > self.n {
            return bad(format!("form degree {} exceeds dimension {}", self.k, self.n));
        }
        match self.family {
            Family::Mc if self.k != 1 || self.n != 3 => bad("Mc is defined for k = 1, n = 3".into()),
            Family::Vc if self.k != 2 || self.n != 3 => bad("Vc is defined for k = 2, n = 3".into()),
            Family::V if self.ring && self.k < self.n => bad("ring V is only defined for k = n".into()),
            _ => Ok(()),
        }
    }

    /// Family after the identifications `V^n = Vd^n` and `Md^n = M^n`.
    pub fn normalized_family(&self) -> Family {
        match self.family {
            Family::V if self.k == self.n => Family::Vd,
            Family::Md if self.k == self.n => Family::M,
            f => f,
        }
    }

    pub fn with(&self, family: Family, k: usize, r: i64) -> Result<Self> {
        Self::new(family, self.ring, k, r, self.n)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.name())?;
        if self.ring {
            write!(f, ":ring")?;
        }
        write!(f, ":k{}:r{}:n{}", self.k, self.r, self.n)
    }
}

/// `Md:ring:k1:r4:n3`; `ring` is optional and `n` defaults to 3.
impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let family: Family = parts.next().unwrap_or("").parse()?;
        let (mut ring, mut k, mut r, mut n) = (false, None, None, 3usize);
        for p in parts {
            let num = |t: &str| t.parse::<i64>().map_err(|_| Error::InvalidSpec(format!("bad field `{p}`")));
            if p == "ring" {
                ring = true;
            } else if let Some(t) = p.strip_prefix('k') {
                k = Some(num(t)?);
            } else if let Some(t) = p.strip_prefix('r') {
                r = Some(num(t)?);
            } else if let Some(t) = p.strip_prefix('n') {
                n = num(t)? as usize;
            } else {
                return Err(Error::InvalidSpec(format!("bad field `{p}`")));
            }
        }
        let k = k.ok_or_else(|| Error::InvalidSpec("missing k".into()))?;
        let r = r.ok_or_else(|| Error::InvalidSpec("missing r".into()))?;
        if k < 0 {
            return Err(Error::InvalidSpec("negative k".into()));
        }
        SpaceSpec::new(family, ring, k as usize, r, n)
    }
}

impl Serialize for SpaceSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpaceSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s: SpaceSpec = "Md:ring:k1:r4".parse().unwrap();
        assert_eq!(s, SpaceSpec::ring(Family::Md, 1, 4, 3).unwrap());
        assert_eq!(s.to_string().parse::<SpaceSpec>().unwrap(), s);
        assert!("Mc:k2:r4".parse::<SpaceSpec>().is_err());
        assert!("Q:k1:r1".parse::<SpaceSpec>().is_err());
        assert!("M:k4:r1:n3".parse::<SpaceSpec>().is_err());
    }
}
