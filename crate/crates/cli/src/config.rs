//! Command-line and config-file parsing into a resolved [`RunConfig`].

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde::{Deserialize, Serialize, Serializer};
use stw_core::series::Rational;

use crate::rational::parse_rational;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Expand,
    Grouplaw,
    Honda,
    Bernoulli,
    Param,
    Classical,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Expand => "expand",
            Command::Grouplaw => "grouplaw",
            Command::Honda => "honda",
            Command::Bernoulli => "bernoulli",
            Command::Param => "param",
            Command::Classical => "classical",
        }
    }

    /// Config fields the command reads, besides `command` and `format`.
    fn fields(self) -> &'static [&'static str] {
        match self {
            Command::Expand => &["g2", "g3", "order", "what"],
            Command::Grouplaw => &["g2", "g3", "order", "what"],
            Command::Honda => &["g2", "g3", "order", "pmax"],
            Command::Bernoulli => &["g2", "g3", "order"],
            Command::Param => &["g2", "g3", "order", "z", "nmax"],
            Command::Classical => &["order", "nmax", "s"],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "stw",
    version,
    about = "Formal groups, L-series coefficients and q-parametrizations of y^2 = 4x^3 - g2 x - g3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Print one exact series: ℘, ℘', f_E, f_L, s(t) or the a(n).
    Expand(ExpandArgs),
    /// Build the formal group law both ways, compare, and check the axioms.
    Grouplaw(ExpandArgs),
    /// Compare a(p) with p + 1 - #E(F_p) for primes up to pmax.
    Honda(HondaArgs),
    /// Universal Bernoulli numbers and Bernoulli-Hurwitz numbers.
    Bernoulli(BernoulliArgs),
    /// Evaluate α(z) = ℘(F(z)), β(z) = ℘'(F(z)).
    Param(ParamArgs),
    /// The e^T - 1 degeneration and partial sums of η(s).
    Classical(ClassicalArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON file with any of the flags of this command, same field names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub g2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g3: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub order: Option<usize>,
    /// expand: wp | wpp | fe | fl | s | an; grouplaw: bb | exp-log.
    #[arg(long)]
    pub what: Option<String>,
}

#[derive(Debug, Args)]
pub struct HondaArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub pmax: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BernoulliArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Order of f_L and number of ℘ coefficients.
    #[arg(long)]
    pub order: Option<usize>,
    /// Point in the upper half-plane as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long)]
    pub nmax: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub nmax: Option<u64>,
    /// Comma-separated exponents s >= 1.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<u32>>,
}

/// A rational given either as text or as a JSON integer.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn text(&self) -> String {
        match self {
            RationalText::Text(t) => t.clone(),
            RationalText::Int(n) => n.to_string(),
        }
    }
}

/// Raw, unvalidated field values shared by the command line and config files.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fields {
    pub command: Option<Command>,
    pub g2: Option<RationalText>,
    pub g3: Option<RationalText>,
    pub order: Option<usize>,
    pub pmax: Option<u64>,
    pub z: Option<String>,
    pub nmax: Option<u64>,
    pub what: Option<String>,
    pub s: Option<Vec<u32>>,
    pub format: Option<Format>,
}

impl Fields {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    /// Fields set in `self` win over those in `base`.
    fn over(self, base: Fields) -> Fields {
        Fields {
            command: self.command.or(base.command),
            g2: self.g2.or(base.g2),
            g3: self.g3.or(base.g3),
            order: self.order.or(base.order),
            pmax: self.pmax.or(base.pmax),
            z: self.z.or(base.z),
            nmax: self.nmax.or(base.nmax),
            what: self.what.or(base.what),
            s: self.s.or(base.s),
            format: self.format.or(base.format),
        }
    }

    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let checks: [(&'static str, bool); 8] = [
            ("g2", self.g2.is_some()),
            ("g3", self.g3.is_some()),
            ("order", self.order.is_some()),
            ("pmax", self.pmax.is_some()),
            ("z", self.z.is_some()),
            ("nmax", self.nmax.is_some()),
            ("what", self.what.is_some()),
            ("s", self.s.is_some()),
        ];
        for (name, set) in checks {
            if set {
                out.push(name);
            }
        }
        out
    }
}

fn curve_fields(c: CurveArgs) -> Fields {
    Fields { g2: c.g2.map(RationalText::Text), g3: c.g3.map(RationalText::Text), ..Fields::default() }
}

impl CommandArgs {
    /// Splits the parsed command line into the command, an optional config
    /// file, and the flags given explicitly.
    pub fn into_parts(self) -> (Command, Option<PathBuf>, Fields) {
        let (command, common, fields) = match self {
            CommandArgs::Expand(a) => {
                (Command::Expand, a.common, Fields { order: a.order, what: a.what, ..curve_fields(a.curve) })
            }
            CommandArgs::Grouplaw(a) => {
                (Command::Grouplaw, a.common, Fields { order: a.order, what: a.what, ..curve_fields(a.curve) })
            }
            CommandArgs::Honda(a) => {
                (Command::Honda, a.common, Fields { order: a.order, pmax: a.pmax, ..curve_fields(a.curve) })
            }
            CommandArgs::Bernoulli(a) => {
                (Command::Bernoulli, a.common, Fields { order: a.order, ..curve_fields(a.curve) })
            }
            CommandArgs::Param(a) => {
                (Command::Param, a.common, Fields { order: a.order, z: a.z, nmax: a.nmax, ..curve_fields(a.curve) })
            }
            CommandArgs::Classical(a) => {
                (Command::Classical, a.common, Fields { order: a.order, nmax: a.nmax, s: a.s, ..Fields::default() })
            }
        };
        (command, common.config, Fields { format: common.format, ..fields })
    }
}

/// A point of the upper half-plane, remembered in the decimal text it was
/// given in.
#[derive(Clone, Debug, PartialEq)]
pub struct ZPoint {
    pub text: String,
    pub value: Complex<f64>,
}

impl ZPoint {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("z must be `re,im` with decimal parts, got `{text}`"));
        let (re, im) = text.split_once(',').ok_or_else(bad)?;
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        if !re.is_finite() || !im.is_finite() {
            return Err(bad());
        }
        Ok(Self { text: text.to_string(), value: Complex::new(re, im) })
    }
}

fn ser_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_z<S: Serializer>(z: &Option<ZPoint>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => s.serialize_str(&z.text),
        None => s.serialize_none(),
    }
}

/// A fully resolved configuration: every field the command reads is set,
/// every other field is `None`. Serializes to a valid config file.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_rational")]
    pub g2: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_rational")]
    pub g3: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pmax: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_z")]
    pub z: Option<ZPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nmax: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub what: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u32>>,
    pub format: Format,
}

const EXPAND_WHAT: [&str; 6] = ["wp", "wpp", "fe", "fl", "s", "an"];
const GROUPLAW_WHAT: [&str; 2] = ["bb", "exp-log"];

impl RunConfig {
    /// Applies the explicit flags over the config file (if any), checks that
    /// only fields of `command` are present, and fills in defaults.
    pub fn resolve(command: Command, file: Option<Fields>, flags: Fields) -> Result<Self, CliError> {
        let fields = match file {
            Some(file) => {
                if let Some(c) = file.command {
                    if c != command {
                        return Err(CliError::Usage(format!("config file is for `{c}`, not `{command}`")));
                    }
                }
                flags.over(file)
            }
            None => flags,
        };
        let allowed = command.fields();
        if let Some(extra) = fields.present().into_iter().find(|f| !allowed.contains(f)) {
            return Err(CliError::Usage(format!("field `{extra}` is not used by `{command}`")));
        }
        let rational = |name: &str, v: &Option<RationalText>| -> Result<Option<Rational>, CliError> {
            if !allowed.contains(&name) {
                return Ok(None);
            }
            let text = v.as_ref().ok_or_else(|| CliError::Usage(format!("`{command}` needs --{name}")))?.text();
            parse_rational(&text).map(Some).map_err(|e| CliError::Usage(format!("--{name} `{text}`: {e}")))
        };
        let g2 = rational("g2", &fields.g2)?;
        let g3 = rational("g3", &fields.g3)?;

        let mut config = RunConfig {
            command,
            g2,
            g3,
            order: None,
            pmax: None,
            z: None,
            nmax: None,
            what: None,
            s: None,
            format: fields.format.unwrap_or_default(),
        };
        match command {
            Command::Expand | Command::Grouplaw => {
                let (choices, default, order) = if command == Command::Expand {
                    (&EXPAND_WHAT[..], "fe", 12)
                } else {
                    (&GROUPLAW_WHAT[..], "bb", 8)
                };
                let what = fields.what.unwrap_or_else(|| default.to_string());
                if !choices.contains(&what.as_str()) {
                    return Err(CliError::Usage(format!("--what must be one of {}", choices.join(", "))));
                }
                let order = fields.order.unwrap_or(order);
                let min = if command == Command::Expand { 3 } else { 2 };
                if order < min {
                    return Err(CliError::Usage(format!("--order must be at least {min}")));
                }
                config.what = Some(what);
                config.order = Some(order);
            }
            Command::Honda => {
                let pmax = fields.pmax.unwrap_or(50);
                let order = fields.order.unwrap_or((pmax as usize).max(1));
                if order < pmax as usize {
                    return Err(CliError::Usage(format!("--order {order} is below --pmax {pmax}")));
                }
                config.pmax = Some(pmax);
                config.order = Some(order);
            }
            Command::Bernoulli => {
                config.order = Some(fields.order.unwrap_or(12));
            }
            Command::Param => {
                let order = fields.order.unwrap_or(50);
                if order < 2 {
                    return Err(CliError::Usage("--order must be at least 2".into()));
                }
                let nmax = fields.nmax.unwrap_or(order as u64);
                if nmax == 0 || nmax > order as u64 {
                    return Err(CliError::Usage(format!("--nmax must lie in 1..={order}")));
                }
                let z = ZPoint::parse(fields.z.as_deref().unwrap_or("0,1"))?;
                if !(z.value.im > 0.0) {
                    return Err(CliError::Usage(format!("z = {} is not in the upper half-plane", z.text)));
                }
                config.order = Some(order);
                config.nmax = Some(nmax);
                config.z = Some(z);
            }
            Command::Classical => {
                let order = fields.order.unwrap_or(12);
                let nmax = fields.nmax.unwrap_or(10_000);
                let s = fields.s.unwrap_or_else(|| vec![1, 2]);
                if order == 0 || nmax == 0 {
                    return Err(CliError::Usage("--order and --nmax must be positive".into()));
                }
                if s.is_empty() || s.contains(&0) {
                    return Err(CliError::Usage("--s takes exponents s >= 1".into()));
                }
                config.order = Some(order);
                config.nmax = Some(nmax);
                config.s = Some(s);
            }
        }
        Ok(config)
    }
}
