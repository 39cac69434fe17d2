//! JSON models (coefficient vectors, stable field order) and aligned text
//! tables (bracket notation).

use serde::Serialize;

use chern_lattice_core::bundle::{Bundle, Existence, Shape};
use chern_lattice_core::classify::{
    ClassificationEntry, CurveChoice, CurveKind, FamilyDescriptor, Item,
};
use chern_lattice_core::surface::{canonical_class, Divisor, Surface};

#[derive(Serialize)]
pub struct DivisorJson {
    pub coeffs: Vec<i64>,
    pub text: String,
}

impl From<Divisor> for DivisorJson {
    fn from(d: Divisor) -> DivisorJson {
        DivisorJson {
            coeffs: d.coeffs().to_vec(),
            text: d.to_string(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ShapeJson {
    Sum {
        text: String,
        first: DivisorJson,
        second: DivisorJson,
    },
    Extension {
        text: String,
        sub: DivisorJson,
        quot: DivisorJson,
        deg_z: i64,
        split: String,
    },
    BlowUpExtension {
        text: String,
        sub: DivisorJson,
        quot: DivisorJson,
        points: i64,
    },
    Tangent {
        text: String,
        twist: i64,
    },
    /// `fixed ⊕ (offset + t·step)` for `t_min ≤ t ≤ t_max`.
    Family {
        text: String,
        fixed: DivisorJson,
        offset: DivisorJson,
        step: DivisorJson,
        t_min: i64,
        t_max: Option<i64>,
    },
    Open {
        text: String,
    },
}

pub fn bundle_json(b: &Bundle) -> ShapeJson {
    let text = b.to_string();
    match *b.shape() {
        Shape::DirectSum(l, m) => ShapeJson::Sum {
            text,
            first: l.into(),
            second: m.into(),
        },
        Shape::Extension {
            sub,
            quot,
            deg_z,
            split,
        } => ShapeJson::Extension {
            text,
            sub: sub.into(),
            quot: quot.into(),
            deg_z,
            split: split.to_string(),
        },
        Shape::BlowUpExtension { sub, quot, points } => ShapeJson::BlowUpExtension {
            text,
            sub: sub.into(),
            quot: quot.into(),
            points,
        },
        Shape::Tangent => ShapeJson::Tangent { text, twist: 0 },
        Shape::TangentTwist(k) => ShapeJson::Tangent { text, twist: k },
    }
}

/// `offset + t·step` off `P²`, with `t` folded into the coefficient when the
/// step is a multiple of `K`.
fn moving_term(f: &FamilyDescriptor) -> String {
    let s = f.surface();
    let k = canonical_class(s);
    let m = f.step.coeffs()[0] / -3;
    if !matches!(s, Surface::DelPezzo(_)) || f.step != m * k {
        return format!("{}+t({})", f.offset, f.step);
    }
    let moving = match m {
        1 => "tK".to_string(),
        -1 => "-tK".to_string(),
        m => format!("{m}tK"),
    };
    match f.offset.to_string() {
        _ if f.offset.is_zero() => moving,
        o if o.starts_with('-') => format!("{moving}{o}"),
        o => format!("{moving}+{o}"),
    }
}

pub fn family_text(f: &FamilyDescriptor) -> String {
    let range = match f.t_max {
        Some(max) => format!("{} ≤ t ≤ {max}", f.t_min),
        None => format!("t ≥ {}", f.t_min),
    };
    if f.surface() == Surface::ProjectivePlane {
        let moving = if f.offset.is_zero() {
            "O(t)".to_string()
        } else {
            format!("O(t{:+})", f.offset.coeffs()[0])
        };
        format!("{}⊕{moving}, {range}", f.fixed)
    } else {
        format!("[{}]⊕[{}], {range}", f.fixed, moving_term(f))
    }
}

fn curve_kind_name(k: CurveKind) -> &'static str {
    match k {
        CurveKind::MinusOne => "minus-one",
        CurveKind::Zero => "zero",
        CurveKind::DisjointMinusOnePair => "disjoint-minus-one-pair",
    }
}

/// Human description of a curve choice, for the table's note column.
pub fn choice_note(c: &CurveChoice) -> String {
    let what = match c.kind {
        CurveKind::MinusOne => "(-1)-curves",
        CurveKind::Zero => "0-curves",
        CurveKind::DisjointMinusOnePair => "disjoint pairs of (-1)-curves",
    };
    format!(
        "curve is any of {} {what}, shown {}",
        c.count, c.representative
    )
}

#[derive(Serialize)]
pub struct CurveChoiceJson {
    pub kind: &'static str,
    pub representative: DivisorJson,
    pub count: usize,
}

impl From<CurveChoice> for CurveChoiceJson {
    fn from(c: CurveChoice) -> CurveChoiceJson {
        CurveChoiceJson {
            kind: curve_kind_name(c.kind),
            representative: c.representative.into(),
            count: c.count,
        }
    }
}

#[derive(Serialize)]
pub struct ExistenceJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

pub fn existence_json(e: Existence) -> ExistenceJson {
    let (kind, note) = match e {
        Existence::ExactCriterion => ("exact-criterion", None),
        Existence::Proved => ("proved", None),
        Existence::Cited(s) => ("cited", Some(s)),
        Existence::NecessaryOnly => ("necessary-only", None),
        Existence::Open(s) => ("open", Some(s)),
    };
    ExistenceJson { kind, note }
}

pub fn existence_text(e: Existence) -> String {
    let j = existence_json(e);
    match j.note {
        Some(n) => format!("{} ({n})", j.kind),
        None => j.kind.to_string(),
    }
}

#[derive(Serialize)]
pub struct EntryJson {
    pub surface: String,
    pub case_label: String,
    pub bundle: ShapeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_choice: Option<CurveChoiceJson>,
    pub c1: DivisorJson,
    pub c2: i64,
    pub c1_sq: i64,
    pub delta: i64,
    pub existence: ExistenceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<String>,
}

pub fn entry_text(e: &ClassificationEntry) -> String {
    match &e.item {
        Item::Bundle { bundle, .. } => bundle.to_string(),
        Item::Family(f) => family_text(f),
        Item::OpenCase => "open".to_string(),
    }
}

pub fn entry_json(e: &ClassificationEntry) -> EntryJson {
    let (bundle, curve_choice) = match &e.item {
        Item::Bundle {
            bundle,
            curve_choice,
        } => (bundle_json(bundle), *curve_choice),
        Item::Family(f) => (
            ShapeJson::Family {
                text: family_text(f),
                fixed: f.fixed.into(),
                offset: f.offset.into(),
                step: f.step.into(),
                t_min: f.t_min,
                t_max: f.t_max,
            },
            f.curve_choice,
        ),
        Item::OpenCase => (
            ShapeJson::Open {
                text: "open".into(),
            },
            None,
        ),
    };
    EntryJson {
        surface: e.surface.to_string(),
        case_label: e.case_label.clone(),
        bundle,
        curve_choice: curve_choice.map(Into::into),
        c1: e.chern.c1().into(),
        c2: e.chern.c2(),
        c1_sq: e.chern.c1_sq(),
        delta: e.chern.delta(),
        existence: existence_json(e.existence),
        stability: e.stability.map(|s| s.to_string()),
    }
}

/// Left-aligned columns separated by two spaces; widths count characters.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn entries_table(entries: &[ClassificationEntry]) -> String {
    let plane = entries
        .iter()
        .any(|e| e.surface == Surface::ProjectivePlane);
    let mut header = vec![
        "label",
        "surface",
        "bundle",
        "c2",
        "c1^2",
        "delta",
        "existence",
    ];
    if plane {
        header.push("stability");
    }
    header.push("note");
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            let note = match &e.item {
                Item::Bundle {
                    curve_choice: Some(c),
                    ..
                } => choice_note(c),
                Item::Family(f) => f.curve_choice.map(|c| choice_note(&c)).unwrap_or_default(),
                _ => String::new(),
            };
            let mut row = vec![
                e.case_label.clone(),
                e.surface.to_string(),
                entry_text(e),
                e.chern.c2().to_string(),
                e.chern.c1_sq().to_string(),
                e.chern.delta().to_string(),
                existence_text(e.existence),
            ];
            if plane {
                row.push(
                    e.stability
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| "-".into()),
                );
            }
            row.push(note);
            row
        })
        .collect();
    table(&header, &rows)
}
