//! Reading and writing tables as sectioned CSV.
//!
//! A document holds one or more sections, each introduced by a `[name]`
//! line; `#` comments and blank lines are ignored. Array sections (`[gw_ws]`,
//! `[iwe]`) hold one block per hdrm with wm rows and sm columns; `[planning]`
//! holds labelled wm/ise rows per (hdrm, target) block; each `[lookup]`
//! section holds one table per target with hdrm columns. Every file this
//! module writes can be read back, so exported tables feed the `--from-array`
//! pipeline unchanged.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::lookup::{LookupEntry, LookupTable};
use super::planning::{PlanningCell, PlanningTable};
use super::{GridAxes, Lattice};
use crate::{Error, Result};

/// All sections found in one document.
#[derive(Debug, Default)]
pub struct ArrayDocument {
    pub gw_ws: Option<Lattice>,
    pub iwe: Option<Lattice>,
    pub planning: Option<PlanningTable>,
    pub lookups: Vec<LookupTable>,
}

impl ArrayDocument {
    pub fn read_path(path: &Path) -> Result<Self> {
        Self::read(File::open(path)?)
    }

    pub fn read<R: Read>(source: R) -> Result<Self> {
        parse_document(source)
    }

    pub fn require_gw_ws(&self) -> Result<&Lattice> {
        self.gw_ws.as_ref().ok_or(Error::MissingSection("gw_ws"))
    }

    pub fn require_iwe(&self) -> Result<&Lattice> {
        self.iwe.as_ref().ok_or(Error::MissingSection("iwe"))
    }

    pub fn require_planning(&self) -> Result<&PlanningTable> {
        self.planning
            .as_ref()
            .ok_or(Error::MissingSection("planning"))
    }

    pub fn lookup_for(&self, target: f64) -> Result<&LookupTable> {
        self.lookups
            .iter()
            .find(|t| (t.target - target).abs() <= 1e-9)
            .ok_or(Error::MissingSection("lookup"))
    }
}

// ------------------------------------------------------------------ writing

fn fmt3(v: f64) -> String {
    format!("{v:.3}")
}

fn fmt_axis(v: f64) -> String {
    // axis values are whole or half numbers; print them compactly
    if v == v.trunc() {
        format!("{v:.0}")
    } else {
        format!("{v}")
    }
}

/// Write one array section: a block per hdrm, wm rows, sm columns,
/// 3-decimal values.
pub fn write_array_section<W: Write>(out: &mut W, name: &str, lattice: &Lattice) -> Result<()> {
    let axes = lattice.axes();
    writeln!(out, "[{name}]")?;
    for (h, hdrm) in axes.hdrm.iter().enumerate() {
        writeln!(out, "hdrm={}", fmt_axis(*hdrm))?;
        let header: Vec<String> = axes
            .sm
            .iter()
            .map(|s| format!("sm={}", fmt_axis(*s)))
            .collect();
        writeln!(out, "wm,{}", header.join(","))?;
        for (w, wm) in axes.wm.iter().enumerate() {
            let row: Vec<String> = (0..axes.sm.len())
                .map(|s| fmt3(lattice.at(h, w, s)))
                .collect();
            writeln!(out, "{},{}", fmt_axis(*wm), row.join(","))?;
        }
    }
    Ok(())
}

/// Write a planning table as labelled wm/ise rows per (hdrm, target) block.
pub fn write_planning<W: Write>(out: &mut W, table: &PlanningTable) -> Result<()> {
    writeln!(out, "[planning]")?;
    let header: Vec<String> = table
        .sm_axis
        .iter()
        .map(|s| format!("sm={}", fmt_axis(*s)))
        .collect();
    for (h, hdrm) in table.hdrm_axis.iter().enumerate() {
        for (t, target) in table.targets.iter().enumerate() {
            writeln!(out, "hdrm={},target={}", fmt_axis(*hdrm), target)?;
            writeln!(out, "row,{}", header.join(","))?;
            for label in ["wm", "ise"] {
                let cells: Vec<String> = (0..table.sm_axis.len())
                    .map(|s| {
                        let cell = table.cell(h, t, s);
                        let v = if label == "wm" { cell.wm } else { cell.ise };
                        v.map(fmt3).unwrap_or_default()
                    })
                    .collect();
                writeln!(out, "{label},{}", cells.join(","))?;
            }
        }
    }
    Ok(())
}

/// Write one lookup table section: hdrm columns in construction order with
/// wm/sm rows and, when present, the re-evaluated efficiency rows.
pub fn write_lookup<W: Write>(out: &mut W, table: &LookupTable) -> Result<()> {
    writeln!(out, "[lookup]")?;
    writeln!(out, "target={}", table.target)?;
    let hdrm: Vec<String> = table.entries.iter().map(|e| fmt_axis(e.hdrm)).collect();
    writeln!(out, "hdrm,{}", hdrm.join(","))?;
    for (label, get) in [
        (
            "wm",
            (|e: &LookupEntry| Some(e.wm)) as fn(&LookupEntry) -> Option<f64>,
        ),
        ("sm", |e| Some(e.sm)),
        ("iwe", |e| e.iwe),
        ("ise", |e| e.ise),
    ] {
        let cells: Vec<Option<f64>> = table.entries.iter().map(get).collect();
        if matches!(label, "iwe" | "ise") && cells.iter().all(Option::is_none) {
            continue;
        }
        let row: Vec<String> = cells
            .iter()
            .map(|v| v.map(fmt3).unwrap_or_default())
            .collect();
        writeln!(out, "{label},{}", row.join(","))?;
    }
    Ok(())
}

// ------------------------------------------------------------------ parsing

struct Lines<R> {
    inner: std::io::Lines<BufReader<R>>,
    number: usize,
    peeked: Option<String>,
}

impl<R: Read> Lines<R> {
    fn new(source: R) -> Self {
        Lines {
            inner: BufReader::new(source).lines(),
            number: 0,
            peeked: None,
        }
    }

    /// Next meaningful line (comments and blanks skipped).
    fn next(&mut self) -> Result<Option<String>> {
        if let Some(line) = self.peeked.take() {
            return Ok(Some(line));
        }
        for line in self.inner.by_ref() {
            let line = line?;
            self.number += 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            return Ok(Some(trimmed.to_string()));
        }
        Ok(None)
    }

    fn put_back(&mut self, line: String) {
        self.peeked = Some(line);
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            msg: msg.into(),
        }
    }
}

fn parse_document<R: Read>(source: R) -> Result<ArrayDocument> {
    let mut lines = Lines::new(source);
    let mut doc = ArrayDocument::default();
    while let Some(line) = lines.next()? {
        let Some(section) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return Err(lines.err(format!("expected a [section] header, got {line:?}")));
        };
        match section {
            "gw_ws" => doc.gw_ws = Some(parse_array_section(&mut lines)?),
            "iwe" => doc.iwe = Some(parse_array_section(&mut lines)?),
            "planning" => doc.planning = Some(parse_planning_section(&mut lines)?),
            "lookup" => doc.lookups.push(parse_lookup_section(&mut lines)?),
            other => return Err(lines.err(format!("unknown section [{other}]"))),
        }
    }
    Ok(doc)
}

fn parse_f64<R: Read>(lines: &Lines<R>, s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|e| lines.err(format!("bad {what} {s:?}: {e}")))
}

fn parse_opt_f64<R: Read>(lines: &Lines<R>, s: &str, what: &str) -> Result<Option<f64>> {
    if s.trim().is_empty() {
        return Ok(None);
    }
    parse_f64(lines, s, what).map(Some)
}

/// `key=value` pairs from a block-header line such as `hdrm=30,target=0.5`.
fn parse_kv<R: Read>(lines: &Lines<R>, line: &str, keys: &[&str]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(keys.len());
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != keys.len() {
        return Err(lines.err(format!("expected {keys:?} on one line, got {line:?}")));
    }
    for (field, key) in fields.iter().zip(keys) {
        let value = field
            .trim()
            .strip_prefix(key)
            .and_then(|rest| rest.trim_start().strip_prefix('='))
            .ok_or_else(|| lines.err(format!("expected {key}=<value>, got {field:?}")))?;
        out.push(parse_f64(lines, value, key)?);
    }
    Ok(out)
}

fn parse_sm_header<R: Read>(lines: &Lines<R>, line: &str, first: &str) -> Result<Vec<f64>> {
    let mut fields = line.split(',');
    let head = fields.next().unwrap_or_default().trim();
    if head != first {
        return Err(lines.err(format!(
            "expected header starting with {first:?}, got {head:?}"
        )));
    }
    fields
        .map(|f| {
            let v = f
                .trim()
                .strip_prefix("sm")
                .and_then(|rest| rest.trim_start().strip_prefix('='))
                .ok_or_else(|| lines.err(format!("expected sm=<value>, got {f:?}")))?;
            parse_f64(lines, v, "sm")
        })
        .collect()
}

fn parse_array_section<R: Read>(lines: &mut Lines<R>) -> Result<Lattice> {
    let mut hdrm_axis: Vec<f64> = Vec::new();
    let mut wm_axis: Vec<f64> = Vec::new();
    let mut sm_axis: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();

    while let Some(line) = lines.next()? {
        if line.starts_with('[') {
            lines.put_back(line);
            break;
        }
        let hdrm = parse_kv(lines, &line, &["hdrm"])?[0];
        let header = lines
            .next()?
            .ok_or_else(|| lines.err("missing sm header"))?;
        let sm = parse_sm_header(lines, &header, "wm")?;
        if hdrm_axis.is_empty() {
            sm_axis = sm;
        } else if sm != sm_axis {
            return Err(lines.err("sm columns differ between hdrm blocks"));
        }
        hdrm_axis.push(hdrm);

        let mut block_wm = Vec::new();
        while let Some(row) = lines.next()? {
            if row.starts_with('[') || row.starts_with("hdrm=") {
                lines.put_back(row);
                break;
            }
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != sm_axis.len() + 1 {
                return Err(lines.err(format!(
                    "expected {} fields, got {}",
                    sm_axis.len() + 1,
                    fields.len()
                )));
            }
            block_wm.push(parse_f64(lines, fields[0], "wm")?);
            for f in &fields[1..] {
                values.push(parse_f64(lines, f, "value")?);
            }
        }
        if hdrm_axis.len() == 1 {
            wm_axis = block_wm;
        } else if block_wm != wm_axis {
            return Err(lines.err("wm rows differ between hdrm blocks"));
        }
    }

    Lattice::new(
        GridAxes {
            hdrm: hdrm_axis,
            wm: wm_axis,
            sm: sm_axis,
        },
        values,
    )
}

fn parse_planning_section<R: Read>(lines: &mut Lines<R>) -> Result<PlanningTable> {
    struct Block {
        hdrm: f64,
        target: f64,
        wm: Vec<Option<f64>>,
        ise: Vec<Option<f64>>,
    }
    let mut sm_axis: Vec<f64> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();

    while let Some(line) = lines.next()? {
        if line.starts_with('[') {
            lines.put_back(line);
            break;
        }
        let kv = parse_kv(lines, &line, &["hdrm", "target"])?;
        let header = lines
            .next()?
            .ok_or_else(|| lines.err("missing sm header"))?;
        let sm = parse_sm_header(lines, &header, "row")?;
        if blocks.is_empty() {
            sm_axis = sm;
        } else if sm != sm_axis {
            return Err(lines.err("sm columns differ between planning blocks"));
        }
        let mut block = Block {
            hdrm: kv[0],
            target: kv[1],
            wm: vec![None; sm_axis.len()],
            ise: vec![None; sm_axis.len()],
        };
        while let Some(row) = lines.next()? {
            if row.starts_with('[') || row.starts_with("hdrm=") {
                lines.put_back(row);
                break;
            }
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != sm_axis.len() + 1 {
                return Err(lines.err(format!(
                    "expected {} fields, got {}",
                    sm_axis.len() + 1,
                    fields.len()
                )));
            }
            let dest = match fields[0].trim() {
                "wm" => &mut block.wm,
                "ise" => &mut block.ise,
                other => return Err(lines.err(format!("unknown planning row label {other:?}"))),
            };
            for (slot, f) in fields[1..].iter().enumerate() {
                dest[slot] = parse_opt_f64(lines, f, "value")?;
            }
        }
        blocks.push(block);
    }

    // axes in first-appearance order
    let mut hdrm_axis: Vec<f64> = Vec::new();
    let mut targets: Vec<f64> = Vec::new();
    for b in &blocks {
        if !hdrm_axis.iter().any(|h| (h - b.hdrm).abs() <= 1e-9) {
            hdrm_axis.push(b.hdrm);
        }
        if !targets.iter().any(|t| (t - b.target).abs() <= 1e-9) {
            targets.push(b.target);
        }
    }
    let mut table = PlanningTable::empty(hdrm_axis, targets, sm_axis);
    for b in &blocks {
        let h = table
            .hdrm_axis
            .iter()
            .position(|x| (x - b.hdrm).abs() <= 1e-9)
            .unwrap();
        let t = table
            .targets
            .iter()
            .position(|x| (x - b.target).abs() <= 1e-9)
            .unwrap();
        for s in 0..table.sm_axis.len() {
            *table.cell_mut(h, t, s) = PlanningCell {
                wm: b.wm[s],
                ise: b.ise[s],
            };
        }
    }
    Ok(table)
}

fn parse_lookup_section<R: Read>(lines: &mut Lines<R>) -> Result<LookupTable> {
    let header = lines
        .next()?
        .ok_or_else(|| lines.err("missing target line"))?;
    let target = parse_kv(lines, &header, &["target"])?[0];
    let hdrm_line = lines.next()?.ok_or_else(|| lines.err("missing hdrm row"))?;
    let mut fields = hdrm_line.split(',');
    if fields.next().map(str::trim) != Some("hdrm") {
        return Err(lines.err("expected hdrm row"));
    }
    let hdrm: Vec<f64> = fields
        .map(|f| parse_f64(lines, f, "hdrm"))
        .collect::<Result<_>>()?;

    let mut rows: Vec<(String, Vec<Option<f64>>)> = Vec::new();
    while let Some(line) = lines.next()? {
        if line.starts_with('[') {
            lines.put_back(line);
            break;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != hdrm.len() + 1 {
            return Err(lines.err(format!(
                "expected {} fields, got {}",
                hdrm.len() + 1,
                fields.len()
            )));
        }
        let label = fields[0].trim().to_string();
        let values = fields[1..]
            .iter()
            .map(|f| parse_opt_f64(lines, f, &label))
            .collect::<Result<Vec<_>>>()?;
        rows.push((label, values));
    }

    let row = |name: &str| rows.iter().find(|(l, _)| l == name).map(|(_, v)| v);
    let wm = row("wm").ok_or_else(|| lines.err("lookup table missing wm row"))?;
    let sm = row("sm").ok_or_else(|| lines.err("lookup table missing sm row"))?;
    let iwe = row("iwe");
    let ise = row("ise");

    let mut entries = Vec::with_capacity(hdrm.len());
    for (i, &h) in hdrm.iter().enumerate() {
        let (Some(wm_v), Some(sm_v)) = (wm[i], sm[i]) else {
            return Err(lines.err(format!("lookup column hdrm={h} missing wm or sm")));
        };
        entries.push(LookupEntry {
            hdrm: h,
            wm: wm_v,
            sm: sm_v,
            iwe: iwe.and_then(|r| r[i]),
            ise: ise.and_then(|r| r[i]),
        });
    }
    Ok(LookupTable { target, entries })
}
