//! Flat `key = value` configuration, merged with command-line overrides
//! and checked against a per-command key schema.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Finite real number, scientific notation allowed.
    Number,
    /// Non-negative integer; `1e5` is accepted.
    Count,
    Choice(&'static [&'static str]),
    /// Present or absent; `true`/`false` in files.
    Flag,
    Text,
}

#[derive(Clone, Copy, Debug)]
pub struct KeySpec {
    pub name: &'static str,
    pub kind: Kind,
    pub required: bool,
    pub help: &'static str,
}

const fn key(name: &'static str, kind: Kind, help: &'static str) -> KeySpec {
    KeySpec { name, kind, required: false, help }
}

const fn needed(name: &'static str, kind: Kind, help: &'static str) -> KeySpec {
    KeySpec { name, kind, required: true, help }
}

use Kind::*;

const RAMSEY: &[KeySpec] = &[
    key("mode", Choice(&["quantized", "semiclassical"]), "field model [default: quantized]"),
    key("field", Choice(&["fock", "coherent"]), "initial field state [default: fock]"),
    key("n", Count, "photon number of a Fock field"),
    key("alpha", Number, "real coherent amplitude α"),
    key("n_max", Count, "Fock cutoff [default: from the field]"),
    key("coupling", Number, "atom-field coupling g, rad/s [default: 1]"),
    key("pulse_area", Number, "rotation angle per pulse, rad [default: π/2]"),
    key("detuning", Number, "atomic minus field frequency, rad/s [default: 0]"),
    key("omega0", Number, "atomic gap, rad/s [default: from delta_e]"),
    key("delta_e", Number, "atomic gap, eV [default: 1]"),
    needed("wait", Number, "waiting time between pulses, s"),
    key("sigma", Number, "decoherence timescale σ, s [default: 0]"),
    key("partition", Choice(&["global", "local", "atom", "field"]), "decoherence blocks [default: global]"),
    key("gamma_sp", Number, "spontaneous decay rate, 1/s [default: 0]"),
    key("phases", Count, "number of scanned phases [default: 32]"),
];

const MICHELSON: &[KeySpec] = &[
    needed("alpha", Number, "real coherent amplitude α of the input"),
    key("n_max", Count, "Fock cutoff per arm [default: from α]"),
    needed("arm_time", Number, "time in the arms, s"),
    key("omega", Number, "mode frequency, rad/s [default: 1 eV/ħ]"),
    key("sigma", Number, "decoherence timescale σ, s [default: 0]"),
    key("partition", Choice(&["global", "local", "arm_c", "arm_d"]), "decoherence blocks [default: global]"),
];

const GHZ: &[KeySpec] = &[
    needed("n_atoms", Count, "number of atoms N"),
    key("omega0", Number, "single-atom gap, rad/s [default: from delta_e]"),
    key("delta_e", Number, "single-atom gap, eV [default: 1]"),
    key("sigma", Number, "decoherence timescale σ, s [default: 0]"),
    key("gamma_sp", Number, "spontaneous decay rate per atom, 1/s [default: 0]"),
    key("three_body_rate", Number, "total three-body loss rate, 1/s [default: 0]"),
    needed("wait", Number, "final time of the decay curve, s"),
    key("points", Count, "samples on the decay curve [default: 11]"),
];

const DESIGN: &[KeySpec] = &[
    key("species", Choice(&["Sr"]), "built-in species supplying defaults"),
    key("gamma_sp", Number, "spontaneous decay rate Γ, 1/s"),
    key("delta_e", Number, "clock transition energy, eV"),
    key("mass", Number, "atomic mass, kg"),
    key("kappa", Number, "collisional phase coefficient κ, m³/s"),
    key("k3", Number, "three-body loss coefficient, m⁶/s"),
    key("a_gg", Number, "ground-ground scattering length, m"),
    key("a_ee", Number, "excited-excited scattering length, m"),
    key("a_eg", Number, "ground-excited scattering length, m"),
    key("grid_per_decade", Count, "grid oracle points per decade [default: 100]"),
    key("grid_decades", Number, "grid half-width in decades [default: 3]"),
];

const BOUNDS: &[KeySpec] = &[
    key("single_atom", Flag, "report the single-atom σ reach"),
    key("matterwave", Flag, "report the matter-wave bound"),
    key("distance", Flag, "report the distance reach"),
    key("cosmic", Flag, "report the cosmic energy bound"),
    key("sigma", Number, "decoherence timescale σ, s"),
    key("gamma", Number, "detectable decoherence rate γ, 1/s"),
    key("delta_e", Number, "energy gap, eV"),
    key("mass", Number, "particle mass, kg"),
    key("velocity", Number, "particle velocity, m/s"),
    key("path_separation", Number, "interferometer arm separation, m"),
    key("flight_length", Number, "interferometer length, m [default: 1]"),
    key("gamma_sp", Number, "spontaneous decay rate Γ, 1/s"),
    key("coherence_time", Number, "laser coherence time, s"),
    key("age_years", Number, "age of the coherence, Julian years"),
];

/// Keys accepted by every command.
pub const GLOBAL_KEYS: &[KeySpec] = &[
    key("command", Choice(&["ramsey", "michelson", "ghz", "design", "bounds", "selftest"]), "command to run"),
    key("format", Choice(&["json", "csv"]), "stdout format [default: json]"),
    key("out", Text, "output path stem; writes .csv, .json and .meta.json"),
    key("sweep", Text, "numeric key to sweep"),
    key("values", Text, "comma-separated sweep values"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Ramsey,
    Michelson,
    Ghz,
    Design,
    Bounds,
    Selftest,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Ramsey,
        Command::Michelson,
        Command::Ghz,
        Command::Design,
        Command::Bounds,
        Command::Selftest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Ramsey => "ramsey",
            Command::Michelson => "michelson",
            Command::Ghz => "ghz",
            Command::Design => "design",
            Command::Bounds => "bounds",
            Command::Selftest => "selftest",
        }
    }

    pub fn about(self) -> &'static str {
        match self {
            Command::Ramsey => "Ramsey fringe with a classical or quantized field",
            Command::Michelson => "Michelson interferometer with a coherent input",
            Command::Ghz => "GHZ coherence decay curve",
            Command::Design => "GHZ experiment design: closed form and grid search",
            Command::Bounds => "Sensitivity bounds from single atoms, matter waves and cosmic ages",
            Command::Selftest => "Run the built-in acceptance checks",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn keys(self) -> &'static [KeySpec] {
        match self {
            Command::Ramsey => RAMSEY,
            Command::Michelson => MICHELSON,
            Command::Ghz => GHZ,
            Command::Design => DESIGN,
            Command::Bounds => BOUNDS,
            Command::Selftest => &[],
        }
    }

    pub fn spec(self, key: &str) -> Option<&'static KeySpec> {
        self.keys().iter().find(|k| k.name == key)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<String>,
}

/// Validated parameters of one command, as their original strings.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Params {
    command: Option<Command>,
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Copy with `key` set to `value` (already validated).
    pub fn with(&self, key: &str, value: &str) -> Self {
        let mut out = self.clone();
        out.values.insert(key.to_string(), value.to_string());
        out
    }

    fn command_name(&self) -> String {
        self.command.map_or_else(String::new, |c| c.name().to_string())
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| parse_number(key, v)).transpose()
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.f64(key)?.unwrap_or(default))
    }

    pub fn require_f64(&self, key: &str) -> Result<f64> {
        self.f64(key)?.ok_or_else(|| CliError::MissingKey {
            key: key.to_string(),
            command: self.command_name(),
        })
    }

    pub fn count(&self, key: &str) -> Result<Option<usize>> {
        self.get(key).map(|v| parse_count(key, v)).transpose()
    }

    pub fn require_count(&self, key: &str) -> Result<usize> {
        self.count(key)?.ok_or_else(|| CliError::MissingKey {
            key: key.to_string(),
            command: self.command_name(),
        })
    }

    pub fn choice<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.get(key).unwrap_or(default)
    }

    pub fn flag(&self, key: &str) -> bool {
        self.get(key) == Some("true")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub sweep: Option<Sweep>,
}

/// `sigma` and `--age-years` style keys both map to snake case.
pub fn normalize_key(key: &str) -> String {
    key.trim().trim_start_matches("--").replace('-', "_")
}

pub fn parse_number(key: &str, value: &str) -> Result<f64> {
    let malformed = || CliError::MalformedNumber {
        key: key.to_string(),
        value: value.to_string(),
    };
    let v: f64 = value.trim().parse().map_err(|_| malformed())?;
    if !v.is_finite() {
        return Err(malformed());
    }
    Ok(v)
}

pub fn parse_count(key: &str, value: &str) -> Result<usize> {
    let v = parse_number(key, value)?;
    if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
        return Err(CliError::MalformedNumber {
            key: key.to_string(),
            value: value.to_string(),
        });
    }
    Ok(v as usize)
}

fn check_value(spec: &KeySpec, value: &str) -> Result<String> {
    let value = value.trim();
    match spec.kind {
        Number => parse_number(spec.name, value).map(|_| value.to_string()),
        Count => parse_count(spec.name, value).map(|_| value.to_string()),
        Choice(allowed) => {
            if allowed.contains(&value) {
                Ok(value.to_string())
            } else {
                Err(CliError::InvalidChoice {
                    key: spec.name.to_string(),
                    value: value.to_string(),
                    allowed: allowed.join(", "),
                })
            }
        }
        Flag => match value {
            "" | "true" => Ok("true".into()),
            "false" => Ok("false".into()),
            _ => Err(CliError::InvalidChoice {
                key: spec.name.to_string(),
                value: value.to_string(),
                allowed: "true, false".into(),
            }),
        },
        Text => Ok(value.to_string()),
    }
}

/// Splits a config file into `(key, value)` pairs.
pub fn parse_file(contents: &str) -> Result<Vec<(String, String)>> {
    let contents = contents.strip_prefix('\u{feff}').unwrap_or(contents);
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, raw) in contents.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Syntax {
            line: i + 1,
            reason: format!("expected `key = value`, got `{line}`"),
        })?;
        let k = normalize_key(k);
        if k.is_empty() {
            return Err(CliError::Syntax { line: i + 1, reason: "empty key".into() });
        }
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(CliError::Syntax { line: i + 1, reason: format!("duplicate key `{k}`") });
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

/// Merges file entries with overrides (which win) and validates the result
/// against the schema of the selected command.
pub fn parse_config(file_contents: &str, overrides: &[(String, String)]) -> Result<RunConfig> {
    let mut merged: BTreeMap<String, String> = parse_file(file_contents)?.into_iter().collect();
    for (k, v) in overrides {
        merged.insert(normalize_key(k), v.clone());
    }

    let command_name = merged
        .remove("command")
        .ok_or_else(|| CliError::Usage("no command given".into()))?;
    let command = Command::parse(command_name.trim()).ok_or_else(|| CliError::InvalidChoice {
        key: "command".into(),
        value: command_name.clone(),
        allowed: Command::ALL.map(Command::name).join(", "),
    })?;
    let format = match merged.remove("format").as_deref().map(str::trim) {
        None | Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => {
            return Err(CliError::InvalidChoice {
                key: "format".into(),
                value: other.into(),
                allowed: "json, csv".into(),
            })
        }
    };
    let output_path = merged
        .remove("out")
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .map(PathBuf::from);
    let sweep_key = merged.remove("sweep").map(|k| normalize_key(&k));
    let sweep_values = merged.remove("values");

    let mut params = Params { command: Some(command), values: BTreeMap::new() };
    for (k, v) in merged {
        let spec = command.spec(&k).ok_or_else(|| CliError::UnknownKey {
            key: k.clone(),
            command: command.name().into(),
        })?;
        params.values.insert(k, check_value(spec, &v)?);
    }

    let sweep = match (sweep_key, sweep_values) {
        (None, None) => None,
        (Some(_), None) => return Err(CliError::Usage("`sweep` needs `values`".into())),
        (None, Some(_)) => return Err(CliError::Usage("`values` needs `sweep`".into())),
        (Some(key), Some(list)) => {
            let spec = command
                .spec(&key)
                .filter(|s| matches!(s.kind, Number | Count))
                .ok_or_else(|| CliError::NotSweepable(key.clone()))?;
            let values = list
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| check_value(spec, v))
                .collect::<Result<Vec<_>>>()?;
            if values.is_empty() {
                return Err(CliError::Usage("sweep over an empty list of values".into()));
            }
            Some(Sweep { key, values })
        }
    };

    for spec in command.keys().iter().filter(|s| s.required) {
        let swept = sweep.as_ref().is_some_and(|s| s.key == spec.name);
        if !params.contains(spec.name) && !swept {
            return Err(CliError::MissingKey {
                key: spec.name.into(),
                command: command.name().into(),
            });
        }
    }

    Ok(RunConfig { command, params, output_path, format, sweep })
}
