//! Aggregation of artifacts into CSV tables and an SVG plot.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use epade_core::nondeg::SweepRecord;

use crate::artifact::{Artifact, ArtifactFile};
use crate::error::CliError;

#[derive(Debug, Default)]
pub struct Collected {
    pub artifacts: Vec<Artifact>,
    pub sweeps: Vec<SweepRecord>,
}

fn list_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| CliError::io(p, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| {
                    matches!(
                        f.extension().and_then(|x| x.to_str()),
                        Some("json" | "jsonl")
                    )
                })
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(p.clone());
        }
    }
    Ok(files)
}

pub fn collect(inputs: &[PathBuf]) -> Result<Collected, CliError> {
    let mut out = Collected::default();
    for path in list_inputs(inputs)? {
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        if path.extension().and_then(|x| x.to_str()) == Some("jsonl") {
            for (i, line) in text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
            {
                let rec: SweepRecord = serde_json::from_str(line).map_err(|e| {
                    let mut err = CliError::parse(&path, &e);
                    if let CliError::Parse { line, .. } = &mut err {
                        *line = i + 1;
                    }
                    err
                })?;
                out.sweeps.push(rec);
            }
        } else {
            let file = ArtifactFile::from_json(&text).map_err(|e| CliError::parse(&path, &e))?;
            out.artifacts.push(file.artifact);
        }
    }
    Ok(out)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, T::to_string)
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?;
    let fail = |e: csv::Error| CliError::Internal(format!("{}: {e}", path.display()));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Writes one CSV per artifact kind (plus `sweep.csv`) and `ratio.svg`;
/// returns the files written.
pub fn report(inputs: &[PathBuf], out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let c = collect(inputs)?;
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let (mut eval, mut pade, mut iterate, mut rank, mut approx) =
        (vec![], vec![], vec![], vec![], vec![]);
    for a in &c.artifacts {
        match a {
            Artifact::Eval {
                name,
                point,
                values,
                ..
            } => {
                for v in values {
                    eval.push(vec![
                        name.clone(),
                        point.to_string(),
                        v.series.to_string(),
                        v.value.decimal.clone(),
                        opt(&v.expected),
                        opt(&v.contains_expected),
                        opt(&v.continued_fraction.as_ref().and_then(|cf| cf.tail_median)),
                    ]);
                }
            }
            Artifact::Pade {
                name,
                params,
                vanishing,
                log2_max_pi,
                ..
            } => pade.push(vec![
                name.clone(),
                params.n.to_string(),
                params.m_deg.to_string(),
                params.k.to_string(),
                vanishing
                    .iter()
                    .map(|v| v.order)
                    .min()
                    .unwrap_or(0)
                    .to_string(),
                format!("{log2_max_pi:.3}"),
            ]),
            Artifact::Iterate {
                name,
                params,
                k_max,
                t,
                integral,
                degree_bound_holds,
                ..
            } => iterate.push(vec![
                name.clone(),
                params.n.to_string(),
                params.m_deg.to_string(),
                k_max.to_string(),
                t.to_string(),
                integral.to_string(),
                degree_bound_holds.to_string(),
            ]),
            Artifact::Rank {
                name,
                params,
                k_max,
                rank: r,
                reached_at,
                pair,
                identity_holds,
                ..
            } => rank.push(vec![
                name.clone(),
                params.n.to_string(),
                params.m_deg.to_string(),
                k_max.to_string(),
                r.to_string(),
                params.omega.to_string(),
                opt(reached_at),
                opt(&pair.map(|p| p.0)),
                opt(&pair.map(|p| p.1)),
                identity_holds.to_string(),
            ]),
            Artifact::Approx {
                name,
                params,
                profile,
                ..
            } => {
                for p in profile {
                    approx.push(vec![
                        name.clone(),
                        params.n.to_string(),
                        p.m_deg.to_string(),
                        p.k.to_string(),
                        format!("{:.6}", p.log_q),
                        opt(&p.log_defect.map(|x| format!("{x:.6}"))),
                        opt(&p.ratio_literal.map(|x| format!("{x:.6}"))),
                        opt(&p.ratio.map(|x| format!("{x:.6}"))),
                    ]);
                }
            }
        }
    }
    let mut written = Vec::new();
    let mut emit = |file: &str, header: &[&str], rows: &[Vec<String>]| -> Result<(), CliError> {
        let p = out.join(file);
        write_csv(&p, header, rows)?;
        written.push(p);
        Ok(())
    };
    emit(
        "eval.csv",
        &[
            "name",
            "point",
            "series",
            "value",
            "expected",
            "contains_expected",
            "cf_tail_median",
        ],
        &eval,
    )?;
    emit(
        "pade.csv",
        &["name", "N", "M", "K", "min_order", "log2_max_pi"],
        &pade,
    )?;
    emit(
        "iterate.csv",
        &["name", "N", "M", "k_max", "t", "integral", "degree_bound"],
        &iterate,
    )?;
    emit(
        "rank.csv",
        &[
            "name",
            "N",
            "M",
            "k_max",
            "rank",
            "omega",
            "reached_at",
            "k1",
            "k2",
            "identity_holds",
        ],
        &rank,
    )?;
    emit(
        "approx.csv",
        &[
            "name",
            "N",
            "M",
            "k",
            "log_q",
            "log_defect",
            "ratio_literal",
            "ratio",
        ],
        &approx,
    )?;
    emit(
        "sweep.csv",
        &["m", "N", "dimR", "samples", "holds", "strict", "aux_holds"],
        &sweep_rows(&c.sweeps),
    )?;
    let svg = out.join("ratio.svg");
    std::fs::write(&svg, ratio_svg(&c.artifacts)).map_err(|e| CliError::io(&svg, e))?;
    written.push(svg);
    Ok(written)
}

fn sweep_rows(recs: &[SweepRecord]) -> Vec<Vec<String>> {
    let mut groups: BTreeMap<(usize, u32, usize), [usize; 4]> = BTreeMap::new();
    for r in recs {
        let g = groups.entry((r.m, r.n, r.dim_r)).or_default();
        g[0] += 1;
        g[1] += r.holds as usize;
        g[2] += r.strict as usize;
        g[3] += r.aux_holds as usize;
    }
    groups
        .into_iter()
        .map(|((m, n, d), c)| {
            let mut row = vec![m.to_string(), n.to_string(), d.to_string()];
            row.extend(c.iter().map(usize::to_string));
            row
        })
        .collect()
}

/// Best ratio log|f − p/q| / log q against M, one polyline per name.
pub fn ratio_svg(artifacts: &[Artifact]) -> String {
    let mut series: BTreeMap<String, BTreeMap<usize, f64>> = BTreeMap::new();
    for a in artifacts {
        if let Artifact::Approx {
            name,
            params,
            profile,
            ..
        } = a
        {
            let key = format!("{name} N={}", params.n);
            for p in profile {
                if let Some(r) = p.ratio {
                    let e = series
                        .entry(key.clone())
                        .or_default()
                        .entry(p.m_deg)
                        .or_insert(r);
                    *e = e.min(r);
                }
            }
        }
    }
    let (w, h, pad) = (480.0, 320.0, 40.0);
    let pts: Vec<(f64, f64)> = series
        .values()
        .flat_map(|s| s.iter().map(|(m, r)| (*m as f64, *r)))
        .collect();
    let (x0, x1) = bounds(pts.iter().map(|p| p.0));
    let (y0, y1) = bounds(pts.iter().map(|p| p.1).chain([-2.0, -1.0]));
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{pad} {pad} V{} H{}" stroke="black" fill="none"/>"#,
        h - pad,
        w - pad
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">M</text>"#,
        w / 2.0,
        h - 8.0
    );
    let _ = writeln!(
        s,
        r#"<text x="8" y="{}" transform="rotate(-90 8 {})">ratio</text>"#,
        h / 2.0,
        h / 2.0
    );
    for y in [-2.0, -1.5, -1.0] {
        if (y0..=y1).contains(&y) {
            let _ = writeln!(
                s,
                r##"<line x1="{pad}" x2="{}" y1="{1:.1}" y2="{1:.1}" stroke="#ccc"/><text x="{2}" y="{1:.1}" text-anchor="end">{y}</text>"##,
                w - pad,
                sy(y),
                pad - 4.0
            );
        }
    }
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
    for (i, (name, pts)) in series.iter().enumerate() {
        let c = colors[i % colors.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|(m, r)| format!("{:.1},{:.1}", sx(*m as f64), sy(*r)))
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline points="{}" stroke="{c}" fill="none"/>"##,
            path.join(" ")
        );
        for (m, r) in pts {
            let _ = writeln!(
                s,
                r##"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{c}"/>"##,
                sx(*m as f64),
                sy(*r)
            );
        }
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" fill="{c}">{name}</text>"##,
            w - pad - 90.0,
            pad + 14.0 * i as f64
        );
    }
    s.push_str("</svg>\n");
    s
}

fn bounds(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
        (a.min(x), b.max(x))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-9 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}
