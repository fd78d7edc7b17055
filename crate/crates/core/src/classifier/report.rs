use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FineSpectra, SpectrumAnswer};
use crate::spaces::{Attainment, IndexProfile};

/// Classification output together with the profile it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// The space as written by the user, when one was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    pub input: IndexProfile,
    pub spectra: FineSpectra,
}

impl ClassificationReport {
    pub fn new(space: Option<String>, input: IndexProfile, spectra: FineSpectra) -> Self {
        ClassificationReport { space, input, spectra }
    }

    /// 0 when every part is exact, 2 when any part is only bounded.
    pub fn exit_code(&self) -> i32 {
        if self.spectra.is_exact() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(space) = &self.space {
            let _ = writeln!(out, "space: {space}");
        }
        let p = &self.input;
        let _ = writeln!(
            out,
            "profile: p_X = {} ({}), q_X = {} ({}), Boyd = [{}, {}], {}{}",
            p.p_x,
            attainment_label(p.p_attained),
            p.q_x,
            attainment_label(p.q_attained),
            p.boyd_lower,
            p.boyd_upper,
            if p.separable { "separable" } else { "non-separable" },
            if p.interp_l2 { ", interpolation" } else { "" },
        );
        let s = &self.spectra;
        for (name, part) in [
            ("σ", &s.spectrum),
            ("σ_pt", &s.point),
            ("σ_r", &s.residual),
            ("σ_c", &s.continuous),
        ] {
            let _ = writeln!(out, "{name:<5} {}", render_answer(part));
        }
        let _ = writeln!(out, "0 in: {:?}", s.zero_location);
        let _ = writeln!(out, "rules: {}", s.provenance.join(", "));
        out
    }
}

fn render_answer(answer: &SpectrumAnswer) -> String {
    match answer {
        SpectrumAnswer::Exact { set } => format!("= {set}"),
        SpectrumAnswer::Bounds { lower, upper } => format!("⊇ {lower}; ⊆ {upper}"),
    }
}

fn attainment_label(a: Attainment) -> &'static str {
    match a {
        Attainment::Attained => "attained",
        Attainment::NotAttained => "not attained",
        Attainment::Unknown => "attainment unknown",
    }
}
