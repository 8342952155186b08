//! Config-file format and flag parsing into library inputs.

use num_complex::Complex64;
use serde::Deserialize;
use std::path::Path;
use vortexw::{ConformalPolyMap, FourierSeries, VortexConfiguration};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub map: Option<MapSpec>,
    pub vortices: Option<Vec<VortexSpec>>,
    pub base: Option<Vec<VortexSpec>>,
    pub psi: Option<PsiSpec>,
    pub trunc: Option<usize>,
    pub quad: Option<QuadSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub coeffs: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VortexSpec {
    pub re: f64,
    pub im: f64,
    pub degree: i32,
}

/// `mean + Σ_{n≥1} cos[n-1] cos nθ + sin[n-1] sin nθ`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiSpec {
    #[serde(default)]
    pub mean: f64,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSpec {
    pub radial: Option<usize>,
    pub angular: Option<usize>,
}

pub fn read_config(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

fn number(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
}

/// `identity`, `scale:R` or `coeffs:re,im;re,im;…` (coefficients of `z⁰, z¹, …`).
pub fn parse_map(s: &str) -> Result<ConformalPolyMap, String> {
    let poly = |coeffs: Vec<Complex64>| ConformalPolyMap::new(coeffs).map_err(|e| e.to_string());
    if s == "identity" {
        return Ok(ConformalPolyMap::identity());
    }
    if let Some(r) = s.strip_prefix("scale:") {
        return Ok(ConformalPolyMap::scaling(number(r)?));
    }
    if let Some(list) = s.strip_prefix("coeffs:") {
        let coeffs = list
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|pair| match pair.split(',').collect::<Vec<_>>()[..] {
                [re, im] => Ok(Complex64::new(number(re)?, number(im)?)),
                _ => Err(format!("coefficient {pair:?} is not re,im")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        return poly(coeffs);
    }
    Err(format!("unknown map {s:?}; expected identity, scale:R or coeffs:re,im;..."))
}

pub fn map_from_file(spec: &MapSpec) -> Result<ConformalPolyMap, String> {
    ConformalPolyMap::new(spec.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .map_err(|e| e.to_string())
}

/// `re,im,degree`.
pub fn parse_vortex(s: &str) -> Result<VortexSpec, String> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [re, im, d] => Ok(VortexSpec {
            re: number(re)?,
            im: number(im)?,
            degree: d.trim().parse().map_err(|_| format!("degree {d:?} is not an integer"))?,
        }),
        _ => Err(format!("vortex {s:?} is not re,im,degree")),
    }
}

pub fn configuration(specs: &[VortexSpec]) -> vortexw::Result<VortexConfiguration> {
    VortexConfiguration::new(
        specs.iter().map(|v| Complex64::new(v.re, v.im)).collect(),
        specs.iter().map(|v| v.degree).collect(),
    )
}

/// `zero` or a comma list of `c0=…`, `cN=…`, `sN=…` terms.
pub fn parse_psi(s: &str) -> Result<PsiSpec, String> {
    let mut spec = PsiSpec::default();
    if s == "zero" {
        return Ok(spec);
    }
    for term in s.split(',').filter(|t| !t.trim().is_empty()) {
        let (key, value) = term
            .split_once('=')
            .ok_or_else(|| format!("phase term {term:?} is not key=value"))?;
        let value = number(value)?;
        let key = key.trim();
        let (kind, n) = key.split_at(1.min(key.len()));
        let n: usize = n.parse().map_err(|_| format!("bad mode in {key:?}"))?;
        match (kind, n) {
            ("c", 0) => spec.mean = value,
            ("c", n) | ("s", n) if n > 0 => {
                let list = if kind == "c" { &mut spec.cos } else { &mut spec.sin };
                if list.len() < n {
                    list.resize(n, 0.0);
                }
                list[n - 1] = value;
            }
            _ => return Err(format!("bad phase term {term:?}")),
        }
    }
    Ok(spec)
}

pub fn series(spec: &PsiSpec, trunc: usize) -> FourierSeries {
    FourierSeries::from_trig(spec.mean, &spec.cos, &spec.sin, trunc)
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(number).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps() {
        assert_eq!(parse_map("identity").unwrap(), ConformalPolyMap::identity());
        assert_eq!(parse_map("scale:2").unwrap(), ConformalPolyMap::scaling(2.0));
        let f = parse_map("coeffs:0,0;1,0;0.1,-0.2").unwrap();
        assert_eq!(f.coeffs()[2], Complex64::new(0.1, -0.2));
        assert!(parse_map("coeffs:1").is_err());
        assert!(parse_map("disc").is_err());
    }

    #[test]
    fn phases() {
        let p = parse_psi("c0=0.5,c2=0.1,s1=-0.3").unwrap();
        assert_eq!((p.mean, p.cos, p.sin), (0.5, vec![0.0, 0.1], vec![-0.3]));
        assert!(parse_psi("s0=1").is_err());
        assert!(parse_psi("x1=1").is_err());
        assert!(parse_psi("c1").is_err());
    }

    #[test]
    fn vortices() {
        let v = parse_vortex("-0.2,0.1,-1").unwrap();
        assert_eq!((v.re, v.im, v.degree), (-0.2, 0.1, -1));
        assert!(parse_vortex("0,0").is_err());
        assert!(parse_vortex("0,0,1.5").is_err());
    }
}
