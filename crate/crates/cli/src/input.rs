//! Input plumbing: groupoid selection (files or builder shorthands) and the
//! extension file format.

use std::path::{Path, PathBuf};

use clap::Args;
use graded_brauer::extension::{build_extension, CentralExtension};
use graded_brauer::groupoid::{
    build_cyclic_product, build_double, build_pair, build_point, build_product_s01, inflate,
    parse_groupoid, FiniteRealGroupoid,
};
use graded_brauer::smith::Int;

use crate::CliError;

#[derive(Args, Debug)]
pub struct GroupoidArgs {
    /// Groupoid file (sections objects:/arrows:/compose:/inv:/rho:)
    #[arg(long, value_name = "FILE")]
    pub groupoid: Option<PathBuf>,
    /// The one-object, one-arrow groupoid
    #[arg(long)]
    pub point: bool,
    /// Pair groupoid on K objects
    #[arg(long, value_name = "K")]
    pub pair: Option<usize>,
    /// Product of cyclic groups as one object: Z2, Z4, Z2xZ2, Z3xZ3, ...
    #[arg(long, value_name = "SPEC")]
    pub group: Option<String>,
    /// With --group: the involution inverts group elements instead of fixing them
    #[arg(long)]
    pub rho_neg: bool,
    /// Two swapped copies of the base, a free involution
    #[arg(long)]
    pub double: bool,
    /// Product with S^{0,1}: two copies, the involution crossing them
    #[arg(long)]
    pub product_s01: bool,
    /// Product with the pair groupoid on K objects, an equivalence
    #[arg(long, value_name = "K")]
    pub inflate: Option<usize>,
}

fn parse_group_spec(spec: &str) -> Result<Vec<u64>, CliError> {
    spec.split(['x', 'X'])
        .map(|part| {
            part.trim()
                .trim_start_matches(['Z', 'z'])
                .parse::<u64>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| {
                    CliError::usage(format!("bad group spec '{spec}' (expected e.g. Z2, Z2xZ4)"))
                })
        })
        .collect()
}

impl GroupoidArgs {
    /// Builds the selected groupoid and a short display name for it.
    pub fn build(&self) -> Result<(String, FiniteRealGroupoid), CliError> {
        let sources =
            [self.groupoid.is_some(), self.point, self.pair.is_some(), self.group.is_some()];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::usage(
                "pick exactly one of --groupoid, --point, --pair, --group",
            ));
        }
        if self.rho_neg && self.group.is_none() {
            return Err(CliError::usage("--rho-neg only applies to --group"));
        }
        if self.double && self.product_s01 {
            return Err(CliError::usage("--double and --product-s01 are mutually exclusive"));
        }
        let (mut name, mut g) = if let Some(path) = &self.groupoid {
            (display_name(path), load_groupoid(path)?)
        } else if self.point {
            ("point".to_string(), build_point())
        } else if let Some(k) = self.pair {
            (format!("pair({k})"), build_pair(k, None).map_err(CliError::usage_from)?)
        } else {
            let spec = self.group.as_ref().unwrap();
            let orders = parse_group_spec(spec)?;
            let name = if self.rho_neg { format!("{spec} (rho = inverse)") } else { spec.clone() };
            (name, build_cyclic_product(&orders, self.rho_neg).map_err(CliError::usage_from)?)
        };
        if self.double {
            g = build_double(&g);
            name = format!("double({name})");
        } else if self.product_s01 {
            g = build_product_s01(&g);
            name = format!("{name} x S01");
        }
        if let Some(k) = self.inflate {
            g = inflate(&g, k);
            name = format!("{name} x pair({k})");
        }
        Ok((name, g))
    }
}

fn display_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| {
        path.display().to_string()
    })
}

pub fn load_groupoid(path: &Path) -> Result<FiniteRealGroupoid, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_groupoid(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

/// A parsed extension file together with the `groupoid:` reference it used.
pub struct ExtFile {
    pub groupoid_path: String,
    pub extension: CentralExtension,
}

fn parse_int_row(s: &str) -> Option<Vec<Int>> {
    s.split_whitespace().map(|t| t.parse::<i64>().ok().map(Int::from)).collect()
}

/// Extension file format: `groupoid: FILE` (relative to the extension file),
/// `m: EVEN`, `delta: v ...` (one value per arrow, file order), `omega: v ...`
/// (one value per composable pair, nerve order). `#` comments and `RESULT:`
/// lines are skipped, so a saved `ext tensor` report loads back unchanged.
pub fn load_extension(path: &Path) -> Result<ExtFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut gpath: Option<String> = None;
    let mut m: Option<u64> = None;
    let mut delta: Option<Vec<Int>> = None;
    let mut omega: Option<Vec<Int>> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("RESULT:") {
            continue;
        }
        let err = |msg: String| CliError::usage(format!("{}:{}: {msg}", path.display(), ln + 1));
        let (key, rest) =
            line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
        let rest = rest.trim();
        match key.trim() {
            "groupoid" => gpath = Some(rest.to_string()),
            "m" => {
                m = Some(rest.parse().map_err(|_| err(format!("bad fiber order '{rest}'")))?)
            }
            "delta" => {
                delta =
                    Some(parse_int_row(rest).ok_or_else(|| err("bad delta row".into()))?)
            }
            "omega" => {
                omega =
                    Some(parse_int_row(rest).ok_or_else(|| err("bad omega row".into()))?)
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let miss = |what: &str| CliError::usage(format!("{}: missing `{what}:` line", path.display()));
    let gpath = gpath.ok_or_else(|| miss("groupoid"))?;
    let m = m.ok_or_else(|| miss("m"))?;
    let delta = delta.ok_or_else(|| miss("delta"))?;
    let omega = omega.ok_or_else(|| miss("omega"))?;
    let base = load_groupoid(&dir.join(&gpath))?;
    let extension = build_extension(&base, m, &delta, &omega).map_err(CliError::failure_from)?;
    Ok(ExtFile { groupoid_path: gpath, extension })
}
