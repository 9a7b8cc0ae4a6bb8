//! Text formats: point sets, layered point sets, sphere sets, certificates.
//!
//! Numbers are rationals written `p/q` (or `p`); decimals are accepted on
//! input. Blank lines and anything after `#` are ignored.

use std::fmt::Write;

use anyhow::{bail, ensure, Context, Result};
use parhull::exact::{format_rational, parse_rational};
use parhull::generators::LowerBoundInstance;
use parhull::parallel::{Layer, LayeredPointSet};
use parhull::sphere::{CircularityReport, Sphere, SphereSet};
use parhull::{Point, Rational};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next non-empty line, split into tokens, with its 1-based number.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let line = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((i + 1, tokens));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_tokens().with_context(|| format!("unexpected end of input, expected {what}"))
    }

    fn header(&mut self) -> Result<(usize, usize)> {
        let (line, t) = self.expect("header")?;
        ensure!(t.len() == 2, "line {line}: header needs two integers");
        Ok((t[0].parse().with_context(|| format!("line {line}"))?, t[1].parse().with_context(|| format!("line {line}"))?))
    }

    fn row(&mut self, width: usize) -> Result<Vec<Rational>> {
        let (line, t) = self.expect("a row of numbers")?;
        ensure!(t.len() == width, "line {line}: expected {width} numbers, found {}", t.len());
        t.iter().map(|s| parse_rational(s).with_context(|| format!("line {line}"))).collect()
    }

    fn finish(&mut self) -> Result<()> {
        if let Some((line, _)) = self.next_tokens() {
            bail!("line {line}: trailing data");
        }
        Ok(())
    }
}

fn push_row(out: &mut String, row: &[Rational]) {
    let cells: Vec<String> = row.iter().map(format_rational).collect();
    out.push_str(&cells.join(" "));
    out.push('\n');
}

/// `D N`, then `N` rows of `D` numbers.
pub fn parse_points(text: &str) -> Result<(usize, Vec<Point>)> {
    let mut lines = Lines::new(text);
    let (d, n) = lines.header()?;
    let points = (0..n).map(|_| lines.row(d).map(Point::new)).collect::<Result<_>>()?;
    lines.finish()?;
    Ok((d, points))
}

pub fn write_points(d: usize, points: &[Point]) -> String {
    let mut out = format!("{d} {}\n", points.len());
    for p in points {
        push_row(&mut out, p);
    }
    out
}

/// `d m`, then per layer `height n_i` and `n_i` rows of `d` numbers.
pub fn parse_layered(text: &str) -> Result<LayeredPointSet> {
    let mut lines = Lines::new(text);
    let (d, m) = lines.header()?;
    let mut layers = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, t) = lines.expect("a layer header")?;
        ensure!(t.len() == 2, "line {line}: layer header is `height count`");
        let height = parse_rational(t[0]).with_context(|| format!("line {line}"))?;
        let n: usize = t[1].parse().with_context(|| format!("line {line}"))?;
        let points = (0..n).map(|_| lines.row(d).map(Point::new)).collect::<Result<_>>()?;
        layers.push(Layer { height, points });
    }
    lines.finish()?;
    Ok(LayeredPointSet::new(d, layers)?)
}

pub fn write_layered(set: &LayeredPointSet) -> String {
    let mut out = format!("{} {}\n", set.d, set.layers.len());
    for layer in &set.layers {
        let _ = writeln!(out, "{} {}", format_rational(&layer.height), layer.points.len());
        for p in &layer.points {
            push_row(&mut out, p);
        }
    }
    out
}

/// `d n`, then `n` rows `c_1 … c_d r`.
pub fn parse_spheres(text: &str) -> Result<SphereSet> {
    let mut lines = Lines::new(text);
    let (d, n) = lines.header()?;
    let mut spheres = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = lines.row(d + 1)?;
        let radius = row.pop().expect("row has d + 1 entries");
        spheres.push(Sphere::new(Point::new(row), radius));
    }
    lines.finish()?;
    Ok(SphereSet::new(d, spheres)?)
}

pub fn write_spheres(set: &SphereSet) -> String {
    let mut out = format!("{} {}\n", set.d, set.spheres.len());
    for s in &set.spheres {
        let mut row = s.center.0.clone();
        row.push(s.radius.clone());
        push_row(&mut out, &row);
    }
    out
}

/// `circularity,count` rows.
pub fn circularity_csv(report: &CircularityReport) -> String {
    let mut out = String::from("circularity,count\n");
    for (c, n) in report.counts.iter().enumerate() {
        let _ = writeln!(out, "{c},{n}");
    }
    out
}

/// Parameters and every checked predicate with its exact margin.
pub fn certificate_json(inst: &LowerBoundInstance) -> String {
    use serde_json::json;
    let checks: Vec<_> = inst
        .certificate
        .checks
        .iter()
        .map(|c| {
            json!({
                "condition": c.condition.name(),
                "sphere": c.sphere,
                "perturbed": c.perturbed,
                "face": c.face,
                "margin": format_rational(&c.margin),
                "pass": c.passed(),
            })
        })
        .collect();
    let doc = json!({
        "d": inst.d,
        "n": inst.n,
        "z1": format_rational(&inst.z1),
        "z2": format_rational(&inst.z2),
        "R": format_rational(&inst.big_r),
        "rho": format_rational(&inst.rho),
        "eps": format_rational(&inst.eps),
        "r": inst.r.as_ref().map(format_rational),
        "all_pass": inst.certificate.all_pass(),
        "trace": inst.trace,
        "checks": checks,
    });
    serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
}
