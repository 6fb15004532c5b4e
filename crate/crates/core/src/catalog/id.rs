use std::fmt;
use std::str::FromStr;

use crate::algebra::CoefficientMode;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Cpn(i64),
    Product(Vec<CatalogId>),
    G24,
}

/// Ring id: `cpn:<n>`, `prod:<id>,<id>[,...]`, `g24`, each optionally
/// suffixed with `@enriched`, `@universal` or `@lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogId {
    pub kind: RingKind,
    pub mode: Option<CoefficientMode>,
}

impl CatalogId {
    pub fn cpn(n: i64) -> Self {
        CatalogId { kind: RingKind::Cpn(n), mode: None }
    }

    pub fn g24() -> Self {
        CatalogId { kind: RingKind::G24, mode: None }
    }

    pub fn product(factors: Vec<CatalogId>) -> Self {
        CatalogId { kind: RingKind::Product(factors), mode: None }
    }

    pub fn with_mode(mut self, mode: CoefficientMode) -> Self {
        self.mode = Some(mode);
        self
    }

    /// The requested mode; factor suffixes must agree with each other and
    /// with the product's own suffix. Lambda when nothing is specified.
    pub fn effective_mode(&self) -> Result<CoefficientMode> {
        let mut seen: Vec<CoefficientMode> = Vec::new();
        self.collect_modes(&mut seen);
        match seen.split_first() {
            None => Ok(CoefficientMode::Lambda),
            Some((first, rest)) => match rest.iter().find(|m| *m != first) {
                None => Ok(*first),
                Some(other) => Err(Error::ModeMismatch(format!(
                    "{} mixes {} and {} coefficients",
                    self,
                    first.as_str(),
                    other.as_str()
                ))),
            },
        }
    }

    fn collect_modes(&self, out: &mut Vec<CoefficientMode>) {
        out.extend(self.mode);
        if let RingKind::Product(fs) = &self.kind {
            for f in fs {
                f.collect_modes(out);
            }
        }
    }

    pub fn without_modes(&self) -> CatalogId {
        let kind = match &self.kind {
            RingKind::Product(fs) => RingKind::Product(fs.iter().map(CatalogId::without_modes).collect()),
            k => k.clone(),
        };
        CatalogId { kind, mode: None }
    }

    /// Factor dimensions when every factor is a projective space.
    pub fn projective_dims(&self) -> Option<Vec<i64>> {
        match &self.kind {
            RingKind::Cpn(n) => Some(vec![*n]),
            RingKind::G24 => None,
            RingKind::Product(fs) => {
                let mut out = Vec::new();
                for f in fs {
                    out.extend(f.projective_dims()?);
                }
                Some(out)
            }
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Cpn(n) => write!(f, "cpn:{}", n)?,
            RingKind::G24 => f.write_str("g24")?,
            RingKind::Product(fs) => {
                f.write_str("prod:")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", x)?;
                }
            }
        }
        if let Some(m) = self.mode {
            write!(f, "@{}", m.as_str())?;
        }
        Ok(())
    }
}

fn parse_mode(s: &str) -> Result<CoefficientMode> {
    match s {
        "enriched" => Ok(CoefficientMode::Enriched),
        "universal" => Ok(CoefficientMode::Universal),
        "lambda" => Ok(CoefficientMode::Lambda),
        _ => Err(Error::UnknownRing(format!("unknown coefficient mode `{}`", s))),
    }
}

fn parse_simple(s: &str) -> Result<CatalogId> {
    let (body, mode) = match s.split_once('@') {
        Some((b, m)) => (b, Some(parse_mode(m)?)),
        None => (s, None),
    };
    let kind = if body == "g24" {
        RingKind::G24
    } else if let Some(n) = body.strip_prefix("cpn:") {
        let n: i64 = n.parse().map_err(|_| Error::UnknownRing(s.to_string()))?;
        if n < 1 {
            return Err(Error::InvalidDimension(n));
        }
        RingKind::Cpn(n)
    } else {
        return Err(Error::UnknownRing(s.to_string()));
    };
    Ok(CatalogId { kind, mode })
}

impl FromStr for CatalogId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("prod:") {
            let factors = rest.split(',').map(|f| parse_simple(f.trim())).collect::<Result<Vec<_>>>()?;
            if factors.is_empty() || rest.trim().is_empty() {
                return Err(Error::UnknownRing(s.to_string()));
            }
            return Ok(CatalogId::product(factors));
        }
        parse_simple(s)
    }
}
