//! Parsing of angles, grids and configuration files, and resolution of the
//! final [`InterferometerConfig`] from file values and flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use su11_core::InterferometerConfig;

use crate::args::ConfigArgs;
use crate::error::CliError;

/// Radians, or a multiple of `pi` such as `pi/2`, `-3pi/4`, `2*pi` or
/// `0.5pi`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("cannot parse angle '{text}'"));
    let Some(at) = s.find("pi") else {
        return s.parse::<f64>().map_err(|_| bad());
    };
    let coeff = s[..at].trim_end_matches('*');
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &s[at + 2..];
    let denom = if rest.is_empty() {
        1.0
    } else {
        let d = rest.strip_prefix('/').ok_or_else(bad)?;
        d.parse::<f64>().map_err(|_| bad())?
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(coeff * PI / denom)
}

/// `start:stop:points`, with angle syntax allowed for the endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!("grid '{text}' is not start:stop:points")));
        }
        let start = parse_angle(parts[0])?;
        let stop = parse_angle(parts[1])?;
        let points: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("grid '{text}' has a bad point count")))?;
        if points < 2 {
            return Err(CliError::Usage(format!("grid '{text}' needs at least two points")));
        }
        if !(start < stop) {
            return Err(CliError::Usage(format!("grid '{text}' needs start < stop")));
        }
        Ok(Self { start, stop, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

const KEYS: [&str; 11] = [
    "alpha", "alpha2", "g", "eta", "theta", "L", "L1", "L2", "n-th", "phi", "delta",
];

/// Reads `key=value` lines; blank lines and `#` comments are skipped and
/// keys may carry a leading `--` or use `_` for `-`.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key '{key}'", n + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn flag_values(args: &ConfigArgs) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    };
    put("alpha", args.alpha.map(|v| v.to_string()));
    put("alpha2", args.alpha2.map(|v| v.to_string()));
    put("g", args.g.map(|v| v.to_string()));
    put("eta", args.eta.map(|v| v.to_string()));
    put("theta", args.theta.clone());
    put("L", args.loss.map(|v| v.to_string()));
    put("L1", args.loss1.map(|v| v.to_string()));
    put("L2", args.loss2.map(|v| v.to_string()));
    put("n-th", args.n_th.map(|v| v.to_string()));
    put("phi", args.phi.clone());
    put("delta", args.delta.clone());
    map
}

/// Flags override file values. A flag for one member of an exclusive
/// group (`alpha`/`alpha2`, `L`/`L1`+`L2`) also removes the file's values
/// for the other members.
fn merge(mut file: BTreeMap<String, String>, flags: BTreeMap<String, String>) -> BTreeMap<String, String> {
    let groups: [&[&str]; 2] = [&["alpha", "alpha2"], &["L", "L1", "L2"]];
    for group in groups {
        if group.iter().any(|k| flags.contains_key(*k)) {
            for k in group {
                file.remove(*k);
            }
        }
    }
    file.extend(flags);
    file
}

fn number(map: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    map.get(key)
        .map(|v| {
            v.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("value '{v}' for {key} is not a number")))
        })
        .transpose()
}

fn angle(map: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    map.get(key).map(|v| parse_angle(v)).transpose()
}

/// Builds and validates the configuration. Unset fields take the defaults
/// `|α| = 1`, `g = 0`, `η = 1/2`, `θ = π/2`, no loss, real inputs.
pub fn resolve(args: &ConfigArgs) -> Result<InterferometerConfig, CliError> {
    let file = match &args.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let map = merge(file, flag_values(args));
    let mut cfg = InterferometerConfig::default();
    match (number(&map, "alpha")?, number(&map, "alpha2")?) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either alpha or alpha2, not both".into())),
        (Some(a), None) => cfg.alpha_mag = a,
        (None, Some(a2)) => {
            if a2 < 0.0 {
                return Err(CliError::Usage("alpha2 must be non-negative".into()));
            }
            cfg.alpha_mag = a2.sqrt();
        }
        (None, None) => {}
    }
    if let Some(g) = number(&map, "g")? {
        cfg.g = g;
    }
    if let Some(eta) = number(&map, "eta")? {
        cfg.eta = eta;
    }
    if let Some(theta) = angle(&map, "theta")? {
        cfg.theta = theta;
    }
    let both = number(&map, "L")?;
    let (l1, l2) = (number(&map, "L1")?, number(&map, "L2")?);
    if both.is_some() && (l1.is_some() || l2.is_some()) {
        return Err(CliError::Usage("give either L or L1/L2, not both".into()));
    }
    if let Some(l) = both {
        cfg.loss_a = l;
        cfg.loss_b = l;
    }
    if let Some(l) = l1 {
        cfg.loss_a = l;
    }
    if let Some(l) = l2 {
        cfg.loss_b = l;
    }
    if let Some(n) = number(&map, "n-th")? {
        cfg.n_th = n;
    }
    if let Some(phi) = angle(&map, "phi")? {
        cfg.phi = phi;
    }
    if let Some(delta) = angle(&map, "delta")? {
        cfg.delta = delta;
    }
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(cfg)
}
