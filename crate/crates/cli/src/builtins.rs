//! Named inputs: fields, algebra families and restricted presentations.
//!
//! Grammar: `f<q>` (the field), `m<n>f<q>`, `t<n>f<q>`, `dual-f<q>`,
//! `f<q>[<group>]` with a group from [`finalg::corpus::small_groups`],
//! `klein`, `lemma32-counterexample`, and `<sweep family>#<index>` for a
//! sweep presentation.

use finalg::algebra::{Algebra, AnyAlgebra};
use finalg::corpus::small_groups;
use finalg::fields::FiniteField;
use finalg::restricted::{klein, lemma32_counterexample, sweep_family, AnyRestricted, SweepFamily};

#[derive(Debug, Clone)]
pub enum Input {
    Field(FiniteField),
    Algebra(AnyAlgebra),
    Restricted(AnyRestricted),
}

fn field(q: &str) -> Result<FiniteField, String> {
    let q: u32 = q.parse().map_err(|_| format!("bad field order '{q}'"))?;
    FiniteField::gf(q).map_err(|e| format!("F_{q}: {e}"))
}

/// Splits `"<n>f<q>"` into `(n, q)`.
fn size_and_field(s: &str) -> Option<(usize, &str)> {
    let (n, q) = s.split_once('f')?;
    Some((n.parse().ok()?, q))
}

pub fn builtin_algebra(name: &str) -> Result<Algebra<FiniteField>, String> {
    match resolve_builtin(name)? {
        Input::Algebra(AnyAlgebra::Finite(a)) => Ok(a),
        _ => Err(format!("'{name}' is not an algebra over a finite field")),
    }
}

pub fn resolve_builtin(name: &str) -> Result<Input, String> {
    match name {
        "klein" => return Ok(Input::Restricted(AnyRestricted::Finite(klein()))),
        "lemma32-counterexample" => {
            let l = lemma32_counterexample(2).map_err(|e| e.to_string())?;
            return Ok(Input::Restricted(AnyRestricted::RationalFunction(l)));
        }
        _ => {}
    }
    if let Some((fam, idx)) = name.split_once('#') {
        let fam: SweepFamily = fam.parse()?;
        let idx: usize = idx.parse().map_err(|_| format!("bad sweep index '{idx}'"))?;
        let all = sweep_family(fam);
        let l = all.get(idx).ok_or_else(|| format!("{fam} has {} presentations", all.len()))?;
        return Ok(Input::Restricted(AnyRestricted::Finite(l.clone())));
    }
    if let Some(q) = name.strip_prefix("dual-f") {
        return Ok(Input::Algebra(AnyAlgebra::Finite(Algebra::dual_numbers(field(q)?))));
    }
    if let Some(rest) = name.strip_prefix('m') {
        if let Some((n, q)) = size_and_field(rest) {
            return Ok(Input::Algebra(AnyAlgebra::Finite(Algebra::matrix(field(q)?, n))));
        }
    }
    if let Some(rest) = name.strip_prefix('t') {
        if let Some((n, q)) = size_and_field(rest) {
            return Ok(Input::Algebra(AnyAlgebra::Finite(Algebra::triangular(field(q)?, n))));
        }
    }
    if let Some(rest) = name.strip_prefix('f') {
        if let Some((q, group)) = rest.split_once('[') {
            let group = group.strip_suffix(']').ok_or_else(|| format!("unterminated group in '{name}'"))?;
            let (_, table) = small_groups()
                .into_iter()
                .find(|(g, _)| g == group)
                .ok_or_else(|| format!("unknown group '{group}'"))?;
            let alg = Algebra::group_algebra(field(q)?, &table).map_err(|e| e.to_string())?;
            return Ok(Input::Algebra(AnyAlgebra::Finite(alg)));
        }
        if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
            return Ok(Input::Field(field(rest)?));
        }
    }
    Err(format!("unknown builtin '{name}'"))
}

/// A builtin name or a path to a JSON file holding an algebra
/// (`{"field", "dim", "table", "one"}`) or a restricted Lie algebra
/// (`{"field", "dim", "bracket", "pmap"}`).
pub fn load_input(spec: &str) -> Result<Input, String> {
    let path = std::path::Path::new(spec);
    if !path.exists() {
        return resolve_builtin(spec);
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{spec}: invalid JSON: {e}"))?;
    if value.get("bracket").is_some() {
        AnyRestricted::parse_json(&text).map(Input::Restricted).map_err(|e| format!("{spec}: {e}"))
    } else {
        AnyAlgebra::parse_json(&text).map(Input::Algebra).map_err(|e| format!("{spec}: {e}"))
    }
}
