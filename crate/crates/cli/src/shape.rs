//! Shape input: polygon JSON files and generator specs.

use std::collections::BTreeMap;
use std::path::Path;

use ovalsweep::geom::{
    make_circular_cap, make_disk, make_reuleaux, make_trapezoid, solve_trapezoid_alpha, Angle,
    ConvexRegion,
};

use crate::CliError;

/// How angles given on the command line are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

impl AngleUnit {
    pub fn angle(self, value: f64) -> Angle {
        match self {
            AngleUnit::Degrees => Angle::from_degrees(value),
            AngleUnit::Radians => Angle::from_radians(value),
        }
    }
}

/// A parsed generator spec such as `trapezoid:alpha=35,kappa=0.36`.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Trapezoid { alpha: Angle, kappa: f64 },
    Reuleaux { n: usize },
    Disk { n: usize },
    Cap { alpha: Angle, n: usize },
}

pub const DEFAULT_N: usize = 256;

impl Generator {
    /// Parses `name[:key=value,...]`. Missing keys take defaults: the
    /// balanced counterexample trapezoid, `n = 256`, cap angle `arctan(1/2)`.
    pub fn parse(spec: &str, unit: AngleUnit) -> Result<Generator, CliError> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let mut params = BTreeMap::new();
        for item in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("expected key=value in '{item}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("'{v}' is not a number in '{spec}'")))?;
            params.insert(k.trim().to_string(), v);
        }
        let mut take = |key: &str| params.remove(key);
        let count = |v: Option<f64>| -> Result<usize, CliError> {
            match v {
                None => Ok(DEFAULT_N),
                Some(x) if x >= 1.0 && x.fract() == 0.0 => Ok(x as usize),
                Some(x) => Err(CliError::Input(format!("n must be a positive integer, got {x}"))),
            }
        };
        let generator = match name {
            "trapezoid" => {
                let alpha = take("alpha").map_or_else(solve_trapezoid_alpha, |a| unit.angle(a));
                let kappa = take("kappa").unwrap_or_else(|| (2.0 * alpha.radians()).cos());
                Generator::Trapezoid { alpha, kappa }
            }
            "reuleaux" => Generator::Reuleaux { n: count(take("n"))? },
            "disk" => Generator::Disk { n: count(take("n"))? },
            "cap" => {
                let alpha = take("alpha").map_or_else(|| Angle::from_radians(0.5f64.atan()), |a| unit.angle(a));
                Generator::Cap { alpha, n: count(take("n"))? }
            }
            other => return Err(CliError::Input(format!("unknown generator '{other}'"))),
        };
        if let Some(key) = params.keys().next() {
            return Err(CliError::Input(format!("unknown parameter '{key}' for '{name}'")));
        }
        Ok(generator)
    }

    pub fn build(&self) -> Result<ConvexRegion, CliError> {
        let region = match *self {
            Generator::Trapezoid { alpha, kappa } => make_trapezoid(alpha, kappa),
            Generator::Reuleaux { n } => make_reuleaux(n),
            Generator::Disk { n } => make_disk(n),
            Generator::Cap { alpha, n } => make_circular_cap(alpha, n),
        };
        region.map_err(|e| CliError::Input(e.to_string()))
    }
}

/// Reads a polygon file `{"vertices": [[x, y], ...]}`.
pub fn read_polygon(path: &Path) -> Result<ConvexRegion, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed polygon in {}: {e}", path.display())))
}

/// Resolves the shape from `--shape` or a positional generator spec.
pub fn resolve(
    file: Option<&Path>,
    spec: Option<&str>,
    unit: AngleUnit,
) -> Result<ConvexRegion, CliError> {
    match (file, spec) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "give either --shape or a generator spec, not both".into(),
        )),
        (Some(path), None) => read_polygon(path),
        (None, Some(spec)) => Generator::parse(spec, unit)?.build(),
        (None, None) => Err(CliError::Input(
            "no shape: pass --shape <file.json> or a generator spec".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_generators() {
        let g = Generator::parse("trapezoid:alpha=45,kappa=0.5", AngleUnit::Degrees).unwrap();
        assert_eq!(
            g,
            Generator::Trapezoid { alpha: Angle::from_degrees(45.0), kappa: 0.5 }
        );
        let g = Generator::parse("cap:alpha=1.0,n=64", AngleUnit::Radians).unwrap();
        assert_eq!(g, Generator::Cap { alpha: Angle::from_radians(1.0), n: 64 });
        assert_eq!(
            Generator::parse("disk", AngleUnit::Degrees).unwrap(),
            Generator::Disk { n: DEFAULT_N }
        );
        match Generator::parse("trapezoid", AngleUnit::Degrees).unwrap() {
            Generator::Trapezoid { alpha, kappa } => {
                assert_eq!(alpha, solve_trapezoid_alpha());
                assert!((kappa - 0.4088).abs() < 1e-4);
            }
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["hexagon", "disk:n=2.5", "disk:m=4", "reuleaux:n", "trapezoid:alpha=x"] {
            assert!(Generator::parse(bad, AngleUnit::Degrees).is_err(), "{bad}");
        }
        assert!(Generator::parse("trapezoid:kappa=2", AngleUnit::Degrees).unwrap().build().is_err());
    }
}
