//! One JSON report per verb. Everything that reaches the output goes through
//! `serde_json::Value` with sorted keys, so repeated runs are byte-identical.

use std::collections::{BTreeMap, BTreeSet};

use flagconf::derangements::pick_half_set;
use flagconf::flags::{is_general_position, is_generic, maximal_degeneracy_class, CompleteConfig, Configuration, LineHyperplaneConfig};
use flagconf::invariants::{
    convert_chi_to_planes, convert_chi_to_w, cross_ratios, planes_invariants, projected_triple_ratio, quotient_point_line_hyperplane,
    s_vector, triple_boundary_ratio, triple_ratio_product_check, triple_ratios, w_ratios, CrossRatios, QuotientPoint,
};
use flagconf::numeric::{GaussianRational, Matrix};
use flagconf::realforms::{
    cartan_argument_class, classify_configuration, epsilon_invariant, moment_ray, HermitianForm, RealForm, RealStructures,
};
use flagconf::semistability::{semistable_isotropic_lines, semistable_line_hyperplane, semistable_planes, Verdict};
use flagconf::triangulation::{classify_decoration, is_projectively_unipotent, DecoratedTriangulation};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Failure;

/// Verb-specific options, already validated against the verb.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub form: Option<HermitianForm>,
    pub real_forms: Option<BTreeSet<RealForm>>,
    pub path: Option<String>,
}

impl Options {
    fn unitary(&self, n: usize) -> HermitianForm {
        self.form.clone().unwrap_or_else(|| HermitianForm::standard_unitary(n))
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn matrix_value(m: &Matrix) -> Value {
    to_value(&m.to_string_rows())
}

fn index_key(alpha: &[usize]) -> String {
    alpha.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn cross_ratio_value(chi: &CrossRatios) -> Value {
    to_value(&chi.iter().map(|(k, v)| (index_key(k), v)).collect::<BTreeMap<_, _>>())
}

fn require_semistable(v: &Verdict) -> Result<(), Failure> {
    if v.semistable {
        Ok(())
    } else {
        Err(Failure::domain("not-semistable", v.reason.clone()))
    }
}

fn complete_with(c: &Configuration, r: usize, verb: &str) -> Result<CompleteConfig, Failure> {
    let x = c.as_complete()?;
    if x.r() != r {
        return Err(Failure::domain("wrong-kind", format!("{verb} needs {r} complete flags, got {}", x.r())));
    }
    Ok(x.clone())
}

fn line_hyperplane_of(c: &Configuration, opts: &Options) -> Result<Option<LineHyperplaneConfig>, Failure> {
    Ok(match c {
        Configuration::LineHyperplane(x) => Some(x.clone()),
        Configuration::Complete(x) => Some(x.to_line_hyperplane()?),
        Configuration::IsotropicLines(x) => Some(flagconf::semistability::induced_line_hyperplane(x, &opts.unitary(x.n()))?),
        Configuration::Planes(_) => None,
    })
}

pub fn semistable(c: &Configuration, opts: &Options) -> Result<Value, Failure> {
    let verdict = match c {
        Configuration::Planes(x) => semistable_planes(x)?,
        Configuration::IsotropicLines(x) => semistable_isotropic_lines(x, &opts.unitary(x.n()))?,
        other => semistable_line_hyperplane(&line_hyperplane_of(other, opts)?.expect("line-hyperplane projection"))?,
    };
    Ok(to_value(&verdict))
}

fn line_hyperplane_quotient(x: &LineHyperplaneConfig) -> Result<QuotientPoint, Failure> {
    require_semistable(&semistable_line_hyperplane(x)?)?;
    Ok(quotient_point_line_hyperplane(x)?)
}

pub fn quotient(c: &Configuration, opts: &Options) -> Result<Value, Failure> {
    Ok(match c {
        Configuration::Planes(x) => {
            require_semistable(&semistable_planes(x)?)?;
            to_value(&planes_invariants(x)?)
        }
        Configuration::IsotropicLines(x) => to_value(&moment_ray(x, &opts.unitary(x.n()))?),
        other => to_value(&line_hyperplane_quotient(&line_hyperplane_of(other, opts)?.expect("line-hyperplane projection"))?),
    })
}

fn line_hyperplane_invariants(x: &LineHyperplaneConfig) -> Result<Value, Failure> {
    let s: BTreeMap<String, GaussianRational> = s_vector(x)?.into_iter().map(|(d, v)| (d.to_string(), v)).collect();
    let verdict = semistable_line_hyperplane(x)?;
    let quotient = if verdict.semistable { Some(quotient_point_line_hyperplane(x)?) } else { None };
    let w = match (&quotient, x.r()) {
        (Some(q), 4) => w_ratios(q).ok(),
        _ => None,
    };
    let degeneracy = if x.r() == 3 && verdict.semistable { Some(maximal_degeneracy_class(x)?.as_str()) } else { None };
    Ok(json!({
        "s": to_value(&s),
        "semistable": verdict.semistable,
        "general_position": is_general_position(x).ok(),
        "quotient": to_value(&quotient),
        "w": to_value(&w),
        "degeneracy": degeneracy,
    }))
}

pub fn invariants(c: &Configuration, opts: &Options) -> Result<Value, Failure> {
    let mut out = json!({ "kind": c.kind().as_str(), "n": c.n() });
    let extra = match c {
        Configuration::LineHyperplane(x) => line_hyperplane_invariants(x)?,
        Configuration::Planes(x) => {
            let verdict = semistable_planes(x)?;
            let q = if verdict.semistable { Some(planes_invariants(x)?) } else { None };
            json!({ "semistable": verdict.semistable, "quotient": to_value(&q) })
        }
        Configuration::Complete(x) => {
            let generic = is_generic(x).ok();
            let mut v = json!({ "generic": generic, "projection": line_hyperplane_invariants(&x.to_line_hyperplane()?)? });
            if generic == Some(true) && x.r() == 3 {
                v["triple_ratios"] = triple_ratio_value(x)?;
            }
            if generic == Some(true) && x.r() == 4 {
                v["cross_ratios"] = cross_ratio_value(&cross_ratios(x)?);
            }
            v
        }
        Configuration::IsotropicLines(x) => {
            let h = opts.unitary(x.n());
            let ray = moment_ray(x, &h).ok();
            let eps = if x.r() % 2 == 1 { epsilon_invariant(x, &h, &pick_half_set(x.r()).map_err(|e| Failure::domain("wrong-kind", e.to_string()))?).ok() } else { None };
            let cartan = if x.r() == 3 { cartan_argument_class(x, &h).ok() } else { None };
            json!({ "moment_ray": to_value(&ray), "epsilon": to_value(&eps), "cartan": to_value(&cartan) })
        }
    };
    for (k, v) in extra.as_object().expect("object").clone() {
        out[k] = v;
    }
    Ok(out)
}

fn triple_ratio_value(x: &CompleteConfig) -> Result<Value, Failure> {
    let t = triple_ratios(x)?;
    Ok(to_value(&t.iter().map(|(k, v)| (index_key(k), v)).collect::<BTreeMap<_, _>>()))
}

pub fn crossratio(c: &Configuration) -> Result<Value, Failure> {
    let x = complete_with(c, 4, "crossratio")?;
    Ok(json!({ "n": x.n(), "entries": cross_ratio_value(&cross_ratios(&x)?) }))
}

pub fn triratio(c: &Configuration) -> Result<Value, Failure> {
    let x = complete_with(c, 3, "triratio")?;
    let entries = triple_ratio_value(&x)?;
    Ok(json!({
        "n": x.n(),
        "entries": entries,
        "product": to_value(&triple_ratio_product_check(&x)?),
        "boundary_ratio": to_value(&triple_boundary_ratio(&x)?),
        "projected_ratio": to_value(&projected_triple_ratio(&x)?),
    }))
}

pub fn convert(c: &Configuration) -> Result<Value, Failure> {
    let x = complete_with(c, 4, "convert")?;
    let chi = cross_ratios(&x)?;
    let w_chi = convert_chi_to_w(&chi, x.n())?;
    let w_direct = w_ratios(&line_hyperplane_quotient(&x.to_line_hyperplane()?)?)?;
    let mut out = json!({
        "n": x.n(),
        "w_from_cross_ratios": to_value(&w_chi),
        "w_direct": to_value(&w_direct),
        "w_agree": w_chi == w_direct,
    });
    if x.n() == 4 {
        let from_chi = convert_chi_to_planes(&chi)?;
        let direct = planes_invariants(&x.to_planes()?)?;
        out["planes_from_cross_ratios"] = to_value(&from_chi);
        out["planes_direct"] = to_value(&direct);
        out["planes_agree"] = json!(from_chi == direct);
    }
    Ok(out)
}

fn structures(opts: &Options) -> RealStructures {
    let mut s = RealStructures::default();
    if let Some(c) = &opts.real_forms {
        s.candidates = c.clone();
    }
    if let Some(h) = &opts.form {
        if h.signature() == (2, 2) {
            s.split_form = Some(h.clone());
        } else {
            s.unitary_form = Some(h.clone());
        }
    }
    s
}

pub fn classify(c: &Configuration, opts: &Options) -> Result<Value, Failure> {
    Ok(to_value(&classify_configuration(c, &structures(opts))?))
}

pub fn classify_triangulation(t: &DecoratedTriangulation, opts: &Options) -> Result<Value, Failure> {
    Ok(to_value(&classify_decoration(t, &structures(opts))?))
}

fn holonomy_value(g: &Matrix) -> Result<Value, Failure> {
    let unipotent = is_projectively_unipotent(g).map_err(|e| Failure::domain("degenerate-input", e.to_string()))?;
    Ok(json!({ "matrix": matrix_value(g), "scalar": to_value(&g.as_scalar()), "unipotent": unipotent }))
}

pub fn holonomy(t: &DecoratedTriangulation, opts: &Options) -> Result<Value, Failure> {
    if let Some(name) = &opts.path {
        let mut v = holonomy_value(&t.named_path_holonomy(name)?)?;
        v["path"] = json!(name);
        return Ok(v);
    }
    let edges = t
        .edge_cycles()?
        .iter()
        .map(|c| {
            let mut v = holonomy_value(&t.edge_holonomy(c.id)?)?;
            v["edge"] = json!(c.id);
            Ok(v)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(json!({ "edges": edges }))
}

pub fn check_triangulation(t: &DecoratedTriangulation) -> Result<Value, Failure> {
    let faces: Vec<Value> = t
        .check_face_matchings()?
        .iter()
        .map(|f| {
            let g = &t.gluings()[f.gluing];
            json!({ "gluing": f.gluing, "tet_a": g.tet_a, "face_a": g.face_a, "tet_b": g.tet_b, "face_b": g.face_b, "matches": f.matches })
        })
        .collect();
    let edges: Vec<Value> = t
        .edge_cycles()?
        .iter()
        .map(|c| {
            let members: Vec<Value> = c.members.iter().map(|(tet, e)| json!([tet, e[0], e[1]])).collect();
            match t.edge_holonomy(c.id) {
                Ok(g) => {
                    let scalar = g.as_scalar();
                    json!({ "edge": c.id, "members": members, "trivial": scalar.is_some(), "scalar": to_value(&scalar), "error": null })
                }
                Err(e) => json!({ "edge": c.id, "members": members, "trivial": false, "scalar": null, "error": e.to_string() }),
            }
        })
        .collect();
    let paths: BTreeMap<String, Value> = t
        .paths()
        .keys()
        .map(|name| {
            let v = match t.named_path_holonomy(name) {
                Ok(g) => json!({ "unipotent": is_projectively_unipotent(&g).unwrap_or(false), "error": null }),
                Err(e) => json!({ "unipotent": false, "error": e.to_string() }),
            };
            (name.clone(), v)
        })
        .collect();
    let consistent = faces.iter().all(|f| f["matches"] == json!(true)) && edges.iter().all(|e| e["trivial"] == json!(true));
    Ok(json!({ "faces": faces, "edges": edges, "paths": paths, "consistent": consistent }))
}
