use thomschur::expansion::SchurExpansion;
use thomschur::thom::{f_i_r, h_r, h_r_o, p_r_o, Family, SingularityId, ThomError};

/// What a `compute`, `verify` or `solve` invocation is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Thom(Family),
    /// `F^(i)_r`.
    F(u32),
    H,
    Ho,
    Po,
    Porteous,
    Uv,
}

impl Target {
    pub fn parse(s: &str, i: Option<u32>) -> Result<Target, String> {
        let need_i = || i.ok_or_else(|| format!("target {s} needs --i"));
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Target::Thom(Family::A(need_i()?))),
            "f" => Ok(Target::F(need_i()?)),
            "h" => Ok(Target::H),
            "ho" | "h0" => Ok(Target::Ho),
            "po" | "p0" | "i22o" => Ok(Target::Po),
            "porteous" => Ok(Target::Porteous),
            "uv" | "appendix" => Ok(Target::Uv),
            _ => s
                .parse::<Family>()
                .map(Target::Thom)
                .map_err(|_| format!("unknown target {s:?}")),
        }
    }

    pub fn min_r(&self) -> u32 {
        match self {
            Target::Thom(Family::III22) | Target::H | Target::Ho | Target::Uv => 2,
            _ => 1,
        }
    }

    pub fn singularity(&self, r: u32) -> Option<SingularityId> {
        match *self {
            Target::Thom(family) => Some(SingularityId { family, r }),
            _ => None,
        }
    }

    pub fn expansion(&self, r: u32) -> Result<SchurExpansion, String> {
        let e = match *self {
            Target::Thom(family) => SingularityId { family, r }.thom_polynomial(),
            Target::F(i) => Ok(f_i_r(i, r)),
            Target::H => Ok(h_r(r)),
            Target::Ho => Ok(h_r_o(r)),
            Target::Po => Ok(p_r_o(r)),
            Target::Porteous | Target::Uv => Err(ThomError::UnsupportedSingularity(format!(
                "{self:?} is a check, not an expansion"
            ))),
        };
        e.map_err(|e| e.to_string())
    }
}
