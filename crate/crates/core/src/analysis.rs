//! End-to-end reports: group summaries, Hurwitz classification with specialness, and CM reports.

use std::sync::Arc;

use serde::Serialize;

use crate::chartable::{character_table, schur_data, CharacterTable, SchurIndex};
use crate::cm::{
    cyclic_cm_type, dicyclic_cm_type, metacyclic_cm_type, quaternion_cm_type,
    verify_cm_type_via_matrices, CmType, Embedding, MatrixCheck,
};
use crate::error::{invalid, Error, Result};
use crate::families::{build_group, family_character_table, FamilySpec};
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use crate::hodge::{
    chevalley_weil, isotypic_dims, specialness, CharMultiplicity, Component, Violation,
};
use crate::monodromy::{
    hurwitz_partition, validate_family_monodromy, MonodromyDatum, MonodromyTag,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable overriding the group-order bound.
pub const MAX_ORDER_ENV: &str = "BRANCHCOVER_MAX_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl Limits {
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_ORDER_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_order| Limits { max_order })
                .map_err(|_| {
                    invalid(format!(
                        "{MAX_ORDER_ENV}={v:?} is not a nonnegative integer"
                    ))
                }),
            Err(_) => Ok(Limits::default()),
        }
    }
}

/// A group together with its character table and, for family members, the family parameters.
#[derive(Debug, Clone)]
pub struct Subject {
    pub name: String,
    pub family: Option<FamilySpec>,
    pub group: Arc<FiniteGroup>,
    pub table: CharacterTable,
}

impl Subject {
    pub fn family(spec: FamilySpec, limits: Limits) -> Result<Self> {
        if spec.group_order() > limits.max_order {
            return Err(Error::Resource(format!(
                "{spec} has order {} above the bound {}",
                spec.group_order(),
                limits.max_order
            )));
        }
        let group = Arc::new(build_group(&spec)?);
        let table = family_character_table(&spec, &group)?;
        Ok(Subject {
            name: spec.to_string(),
            family: Some(spec),
            group,
            table,
        })
    }

    pub fn from_table_file(path: &str, limits: Limits) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {path}: {e}")))?;
        let group = FiniteGroup::from_json_str(&text)?;
        if group.order() > limits.max_order {
            return Err(Error::Resource(format!(
                "group in {path} has order {} above the bound {}",
                group.order(),
                limits.max_order
            )));
        }
        let group = Arc::new(group);
        let table = character_table(&group, limits.max_order)?;
        Ok(Subject {
            name: format!("file:{path}"),
            family: None,
            group,
            table,
        })
    }

    /// Accepts a family spec string or "file:PATH" naming a group table.
    pub fn load(spec: &str, limits: Limits) -> Result<Self> {
        match spec.trim().strip_prefix("file:") {
            Some(path) => Self::from_table_file(path, limits),
            None => Self::family(spec.parse()?, limits),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub index: usize,
    pub representative: String,
    pub size: usize,
    pub order: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterInfo {
    pub index: usize,
    pub label: String,
    pub degree: u32,
    pub indicator: i8,
    pub field_degree_q: usize,
    pub m_q: SchurIndex,
    pub m_qi4: SchurIndex,
    pub dual: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupInfo {
    pub engine_version: &'static str,
    pub spec: String,
    pub order: usize,
    pub class_count: usize,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<CharacterInfo>,
}

pub fn group_info(s: &Subject) -> GroupInfo {
    let g = &s.group;
    let cl = g.classes();
    let t = &s.table;
    GroupInfo {
        engine_version: ENGINE_VERSION,
        spec: s.name.clone(),
        order: g.order(),
        class_count: cl.len(),
        classes: (0..cl.len())
            .map(|c| ClassInfo {
                index: c,
                representative: g.label(cl.representatives[c]),
                size: cl.sizes[c],
                order: t.class_orders()[c],
            })
            .collect(),
        characters: (0..t.len())
            .map(|i| {
                let sd = schur_data(t, i, s.family.as_ref());
                CharacterInfo {
                    index: i,
                    label: t.character(i).label.clone(),
                    degree: t.character(i).degree,
                    indicator: sd.indicator,
                    field_degree_q: sd.char_field_degree_q,
                    m_q: sd.m_q,
                    m_qi4: sd.m_qi4,
                    dual: t.dual(i),
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmStatus {
    Cm,
    ZeroJacobian,
    CriterionSilent,
    /// N = 0 but no closed-form CM type is available on this path.
    Unsupported,
}

impl CmStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CmStatus::Cm => "cm",
            CmStatus::ZeroJacobian => "zero-Jacobian",
            CmStatus::CriterionSilent => "criterion-silent",
            CmStatus::Unsupported => "unsupported",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmField {
    pub kind: &'static str,
    pub conductors: Vec<u32>,
}

/// CM analysis of one datum.
#[derive(Debug, Clone, Serialize)]
pub struct CmReport {
    pub engine_version: &'static str,
    pub spec: String,
    pub hurwitz_class: usize,
    pub ssg: [String; 3],
    pub local_monodromy: [u32; 3],
    pub genus: u64,
    pub tag: Option<MonodromyTag>,
    #[serde(rename = "N")]
    pub n: u64,
    pub status: CmStatus,
    pub reason: Option<String>,
    pub field: Option<CmField>,
    pub embeddings: Vec<Embedding>,
    pub verified_by_matrices: bool,
    pub matrix_check: Option<MatrixCheck>,
    pub components: Vec<Component>,
    pub chars: Vec<CharMultiplicity>,
    pub violated: Vec<Violation>,
}

impl CmReport {
    pub fn cm_type(&self) -> Option<CmType> {
        self.field.as_ref().map(|f| CmType {
            conductors: f.conductors.clone(),
            embeddings: self.embeddings.clone(),
        })
    }
}

fn closed_form_type(
    spec: &FamilySpec,
    tag: MonodromyTag,
    table: &CharacterTable,
    mu: &[u32],
) -> std::result::Result<CmType, String> {
    let r = match spec {
        FamilySpec::Metacyclic { .. } => metacyclic_cm_type(spec, tag),
        FamilySpec::Dicyclic { .. } => dicyclic_cm_type(spec, tag, table, mu),
        FamilySpec::Quaternion8 => Ok(quaternion_cm_type()),
        FamilySpec::Cyclic { .. } => cyclic_cm_type(spec, table, mu),
    };
    r.map_err(|e| e.to_string())
}

/// Full CM analysis of a datum that belongs to Hurwitz class `class_id`.
pub fn analyze_datum(s: &Subject, d: &MonodromyDatum, class_id: usize) -> Result<CmReport> {
    let g = &s.group;
    let t = &s.table;
    let tag = match &s.family {
        Some(f) => Some(validate_family_monodromy(f, g, d)?),
        None => None,
    };
    let mu = chevalley_weil(d, t)?;
    let sp = specialness(&mu, t)?;
    let components = isotypic_dims(&mu, t)?;
    let genus = d.genus(g)?;
    let mut report = CmReport {
        engine_version: ENGINE_VERSION,
        spec: s.name.clone(),
        hurwitz_class: class_id,
        ssg: d.labels(g),
        local_monodromy: d.local_monodromy(g),
        genus,
        tag,
        n: sp.n,
        status: CmStatus::CriterionSilent,
        reason: None,
        field: None,
        embeddings: vec![],
        verified_by_matrices: false,
        matrix_check: None,
        components,
        chars: sp.chars,
        violated: sp.violated,
    };
    if genus == 0 {
        report.status = CmStatus::ZeroJacobian;
        report.reason = Some("genus 0: the Jacobian is trivial".into());
        return Ok(report);
    }
    if sp.n > 0 {
        report.reason = Some(format!(
            "N = {} > 0: the N = 0 criterion does not apply",
            sp.n
        ));
        return Ok(report);
    }
    let (Some(spec), Some(tag)) = (s.family, tag) else {
        report.status = CmStatus::Unsupported;
        report.reason = Some("N = 0; concrete CM types are only available for the families".into());
        return Ok(report);
    };
    let ty = match closed_form_type(&spec, tag, t, &mu) {
        Ok(ty) => ty,
        Err(why) => {
            report.status = CmStatus::Unsupported;
            report.reason = Some(format!("N = 0, but {why}"));
            return Ok(report);
        }
    };
    if !ty.is_well_formed() || ty.dimension() as u64 != genus {
        return Err(crate::error::internal(format!(
            "CM type with {} embeddings for genus {genus} is not a CM type",
            ty.dimension()
        )));
    }
    let check = verify_cm_type_via_matrices(&spec, t, d, tag, &mu, &ty)?;
    report.status = CmStatus::Cm;
    report.field = Some(CmField {
        kind: ty.field_kind(),
        conductors: ty.conductors.clone(),
    });
    report.embeddings = ty.embeddings;
    report.verified_by_matrices = check.verified;
    report.matrix_check = Some(check);
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub id: usize,
    pub orbit_size: usize,
    #[serde(flatten)]
    pub cm: CmReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub engine_version: &'static str,
    pub spec: String,
    pub order: usize,
    pub ssg_count: usize,
    pub classes: Vec<ClassReport>,
}

/// Hurwitz classes of the subject, each analyzed at its representative.
pub fn classify(s: &Subject, limits: Limits) -> Result<Classification> {
    let (classes, data) = hurwitz_partition(&s.group, limits.max_order)?;
    let reports = classes
        .iter()
        .map(|c| {
            Ok(ClassReport {
                id: c.id,
                orbit_size: c.orbit_size,
                cm: analyze_datum(s, &c.representative, c.id)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Classification {
        engine_version: ENGINE_VERSION,
        spec: s.name.clone(),
        order: s.group.order(),
        ssg_count: data.len(),
        classes: reports,
    })
}

fn is_main(tag: Option<MonodromyTag>) -> bool {
    matches!(
        tag,
        Some(MonodromyTag::MetacyclicMain | MonodromyTag::DicyclicQ44 | MonodromyTag::Quaternion)
    )
}

/// CM report for a given datum literal, or for the main class when none is given.
pub fn cm_report(s: &Subject, ssg: Option<&str>, limits: Limits) -> Result<CmReport> {
    let (classes, data) = hurwitz_partition(&s.group, limits.max_order)?;
    if classes.is_empty() {
        return Err(invalid(format!(
            "{} has no spherical system of three generators",
            s.name
        )));
    }
    match ssg {
        Some(lit) => {
            let d = MonodromyDatum::parse(&s.group, s.family.as_ref(), lit)?;
            let id = data
                .iter()
                .find(|(e, _)| *e == d)
                .map(|&(_, id)| id)
                .expect("every datum is enumerated");
            analyze_datum(s, &d, id)
        }
        None => {
            let tags: Vec<Option<MonodromyTag>> = classes
                .iter()
                .map(|c| {
                    s.family
                        .as_ref()
                        .map(|f| validate_family_monodromy(f, &s.group, &c.representative))
                        .transpose()
                })
                .collect::<Result<_>>()?;
            let pick = tags.iter().position(|&t| is_main(t)).unwrap_or(0);
            analyze_datum(s, &classes[pick].representative, classes[pick].id)
        }
    }
}
