//! Checks shared by the structure suite and the acceptance target.

#![allow(dead_code)]

use wsmod_core::canonical_ideal::CanonicalIdeal;
use wsmod_core::deformation::{t1_minus, t1_oracle, RhoEngine};
use wsmod_core::semigroup::{symmetric_semigroups, Semigroup};
use wsmod_core::syzygies::{all_syzygies, verify_syzygy};

/// Symmetric semigroups with `3 < n_1 < g`, `N ≠ <4,5>` and genus at most `max_g`.
pub fn admissible(max_g: usize) -> Vec<Semigroup> {
    (1..=max_g)
        .flat_map(symmetric_semigroups)
        .filter(|s| s.validate_hypotheses().passes())
        .collect()
}

fn expect(what: &str, sg: &Semigroup, found: usize, expected: usize) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("{sg}: {what} = {found}, expected {expected}"))
    }
}

/// Relation, `Λ_2` and normalization counts, plus the codimensions of
/// `I_2`, `I_3` when `codims` is set.
pub fn check_counts(sg: &Semigroup, codims: bool) -> Result<(), String> {
    let g = sg.genus();
    let ci = CanonicalIdeal::new(sg).map_err(|e| format!("{sg}: {e}"))?;
    expect("quadratic relations", sg, ci.relations().len(), (g - 2) * (g - 3) / 2)?;
    expect("dim Λ_2", sg, ci.hermitian_basis(2).len(), 3 * g - 3)?;
    let sel = ci.normalize_selection().map_err(|e| format!("{sg}: {e}"))?;
    expect("normalized coefficients", sg, sel.values().map(|s| s.len()).sum(), g * (g - 1) / 2)?;
    let top = 2 * g as u32 - 2;
    let nongaps = sg.nongaps_up_to(top);
    for w in 1..=top {
        let formula = nongaps.iter().filter(|&&m| m + w <= top && sg.contains(m + w)).count();
        let found = sel.get(&w).map_or(0, |s| s.len());
        expect(&format!("normalized coefficients of weight {w}"), sg, found, formula)?;
    }
    if codims {
        expect("codim I_2", sg, ci.ideal_codimension(2), 3 * (g - 1))?;
        expect("codim I_3", sg, ci.ideal_codimension(3), 5 * (g - 1))?;
    }
    Ok(())
}

/// Number of syzygies, `ε = ±1`, and that each expands to zero.
pub fn check_syzygies(sg: &Semigroup) -> Result<(), String> {
    let g = sg.genus();
    let ci = CanonicalIdeal::new(sg).map_err(|e| format!("{sg}: {e}"))?;
    let zs = all_syzygies(&ci);
    expect("syzygies", sg, zs.len(), (g - 2) * (g - 5) / 2)?;
    for z in &zs {
        if !verify_syzygy(&ci, z) {
            return Err(format!("{sg}: syzygy for relation {:?} does not vanish", ci.relations()[z.target]));
        }
        if z.terms.iter().any(|t| t.epsilon.abs() != 1) {
            return Err(format!("{sg}: syzygy with ε outside ±1"));
        }
    }
    Ok(())
}

/// `T^{1,−}` from the obstruction equations against the semigroup-ring oracle.
pub fn check_oracle(sg: &Semigroup) -> Result<usize, String> {
    let engine = RhoEngine::new(CanonicalIdeal::new(sg).map_err(|e| format!("{sg}: {e}"))?)
        .map_err(|e| format!("{sg}: {e}"))?;
    let t1 = t1_minus(&engine).histogram();
    let oracle = t1_oracle(sg);
    if t1 != oracle {
        return Err(format!("{sg}: engine {t1:?} vs oracle {oracle:?}"));
    }
    Ok(t1.values().sum())
}
