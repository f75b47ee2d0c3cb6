//! Case descriptions: module descriptors, the case shared by all
//! commands, and the key=value config file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context as _, Result};
use hwtensor::{CartanType, Context, HWModule, ModuleKind, RootDatum, Weight};

/// `irr:<pairings>`, `verma:<pairings>` or `par:<levi>:<pairings>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub kind: ModuleKind,
    pub hw: Weight,
}

impl Descriptor {
    pub fn build(&self, ctx: &Context, cutoff: u32) -> Result<HWModule> {
        HWModule::build(ctx, &self.hw, self.kind.clone(), cutoff)
            .with_context(|| format!("cannot build module `{self}`"))
    }

    /// Finite-dimensional with a known lowest weight.
    pub fn depth(&self, datum: &RootDatum) -> Option<u32> {
        if self.kind != ModuleKind::Irreducible {
            return None;
        }
        datum.depth(&self.hw).ok()
    }
}

/// Split a descriptor into its kind prefix and the pairing list.
pub fn split_descriptor(s: &str) -> Result<(&str, &str)> {
    match s.rsplit_once(':') {
        Some((kind, hw)) if !kind.is_empty() => Ok((kind, hw)),
        _ => bail!(
            "invalid module descriptor `{s}` (expected irr:<pairings>, verma:<pairings> or par:<levi>:<pairings>)"
        ),
    }
}

impl FromStr for Descriptor {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, hw) = split_descriptor(s.trim())?;
        let kind: ModuleKind = kind.parse()?;
        if hw.trim().is_empty() {
            bail!("missing highest weight in descriptor `{s}`");
        }
        let hw: Weight = hw.parse()?;
        Ok(Self { kind, hw })
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.hw)
    }
}

/// Datum, the two factors and the height cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub datum: CartanType,
    pub v: Descriptor,
    pub z: Descriptor,
    pub height: u32,
}

impl Case {
    /// Resolve the cutoff: the given height, or else the depth sum when both
    /// factors are finite-dimensional.
    pub fn new(datum: CartanType, v: Descriptor, z: Descriptor, height: Option<u32>) -> Result<Self> {
        let rd = RootDatum::new(datum);
        for d in [&v, &z] {
            rd.check_weight(&d.hw)
                .with_context(|| format!("descriptor `{d}` does not fit type {datum}"))?;
            if let ModuleKind::Parabolic(s) = &d.kind {
                if let Some(&i) = s.iter().find(|&&i| i >= rd.rank()) {
                    bail!("Levi index {} out of range for type {datum}", i + 1);
                }
            }
        }
        let height = match height {
            Some(h) => h,
            None => match Self::sufficient(&rd, &v, &z) {
                Some(h) => h,
                None => bail!("--height is required unless both factors are finite-dimensional irreducibles"),
            },
        };
        Ok(Self { datum, v, z, height })
    }

    fn sufficient(rd: &RootDatum, v: &Descriptor, z: &Descriptor) -> Option<u32> {
        Some(v.depth(rd)? + z.depth(rd)?)
    }

    /// Height past which `V ⊗ Z` has no weights, when both factors are finite-dimensional.
    pub fn sufficient_height(&self) -> Option<u32> {
        Self::sufficient(&RootDatum::new(self.datum), &self.v, &self.z)
    }

    pub fn context(&self) -> Result<Context> {
        Ok(Context::for_weights(
            RootDatum::new(self.datum),
            [&self.v.hw, &self.z.hw],
        )?)
    }

    /// File-name friendly form of the canonical string.
    pub fn slug(&self) -> String {
        self.to_string()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect()
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type={};v={};z={};height={}",
            self.datum, self.v, self.z, self.height
        )
    }
}

impl FromStr for Case {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for part in s.split(';').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .with_context(|| format!("expected key=value, got `{part}`"))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| kv.get(k).with_context(|| format!("missing `{k}` in case `{s}`"));
        let datum: CartanType = get("type")?.parse()?;
        let height = match kv.get("height") {
            Some(h) => Some(h.parse().with_context(|| format!("invalid height `{h}`"))?),
            None => None,
        };
        Self::new(datum, get("v")?.parse()?, get("z")?.parse()?, height)
    }
}

/// `key=value` lines; blank lines and `#` comments are ignored.
#[derive(Clone, Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub const KEYS: [&'static str; 9] = ["type", "v", "z", "height", "drop", "q0", "out", "jobs", "journal"];

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("config line {}: expected key=value", n + 1))?;
            let k = k.trim();
            if !Self::KEYS.contains(&k) {
                bail!("config line {}: unknown key `{k}`", n + 1);
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag value if given, else the config value.
    pub fn pick(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.get(key).map(str::to_string))
    }

    pub fn pick_parsed<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|e| anyhow::anyhow!("config key `{key}`: invalid value `{s}`: {e}")),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for s in ["irr:1", "verma:-1", "par:1:0,3", "verma:1/2,-3", "irr:0,0"] {
            let d: Descriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("verma:x".parse::<Descriptor>().is_err());
        assert!("irr".parse::<Descriptor>().is_err());
        assert!("irr:".parse::<Descriptor>().is_err());
        assert!("foo:1".parse::<Descriptor>().is_err());
    }

    #[test]
    fn case_round_trip_and_default_height() {
        let c: Case = "type=A1;v=irr:1;z=irr:2".parse().unwrap();
        assert_eq!(c.height, 3);
        assert_eq!(c.to_string(), "type=A1;v=irr:1;z=irr:2;height=3");
        assert_eq!(c.to_string().parse::<Case>().unwrap(), c);
        assert!("type=A1;v=irr:1;z=verma:-1".parse::<Case>().is_err());
        assert!("type=A2;v=irr:1;z=irr:1".parse::<Case>().is_err());
        assert!("type=A2;v=par:3:0,1;z=irr:1,0;height=2".parse::<Case>().is_err());
    }

    #[test]
    fn config_lines() {
        let c = Config::parse("# case\ntype = A2\nv=irr:1,0\n\nheight=4\n").unwrap();
        assert_eq!(c.get("type"), Some("A2"));
        assert_eq!(c.pick(Some("A1".into()), "type").as_deref(), Some("A1"));
        assert_eq!(c.pick_parsed::<u32>(None, "height").unwrap(), Some(4));
        assert!(Config::parse("colour=red").is_err());
        assert!(Config::parse("type").is_err());
    }
}
