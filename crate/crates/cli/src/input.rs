//! Group, subgroup and function inputs.
//!
//! A run file is TOML:
//!
//! ```toml
//! [group]
//! kind = "permutation"            # or "named" / "cayley"
//! generators = [[1, 0, 2], [1, 2, 0]]
//!
//! subgroup = [2]                  # element indices, or "full" / "trivial"
//! dimv = 2
//!
//! [[functions]]
//! kind = "random"
//! seed = 3
//! ```
//!
//! Permutations are image lists. Command-line flags override file values.

use std::path::Path;

use fgtrace::{lookup, FiniteGroup, FunctionSpec};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Named {
        name: String,
    },
    Permutation {
        generators: Vec<Vec<usize>>,
    },
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        let group = match self {
            GroupSpec::Named { name } => lookup(name)
                .ok_or_else(|| CliError::Input(format!("unknown catalog group `{name}`")))?
                .build(),
            GroupSpec::Permutation { generators } => FiniteGroup::from_permutations(generators),
            GroupSpec::Cayley { table, labels } => {
                FiniteGroup::from_cayley_with_labels(table, labels.clone())
            }
        };
        group.map_err(|e| CliError::Input(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupChoice {
    Trivial,
    Full,
    Generated(Vec<usize>),
}

impl std::str::FromStr for SubgroupChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "" | "trivial" => Ok(SubgroupChoice::Trivial),
            "full" => Ok(SubgroupChoice::Full),
            list => list
                .split(',')
                .map(|p| {
                    p.trim().parse::<usize>().map_err(|_| {
                        CliError::Input(format!("--subgroup: `{p}` is not an element index"))
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(SubgroupChoice::Generated),
        }
    }
}

impl<'de> Deserialize<'de> for SubgroupChoice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Keyword(String),
            List(Vec<usize>),
        }
        match Raw::deserialize(d)? {
            Raw::List(l) if l.is_empty() => Ok(SubgroupChoice::Trivial),
            Raw::List(l) => Ok(SubgroupChoice::Generated(l)),
            Raw::Keyword(k) => match k.as_str() {
                "full" => Ok(SubgroupChoice::Full),
                "trivial" => Ok(SubgroupChoice::Trivial),
                other => Err(serde::de::Error::custom(format!(
                    "subgroup must be a list of indices, \"full\" or \"trivial\", got \"{other}\""
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub subgroup: Option<SubgroupChoice>,
    #[serde(default)]
    pub dimv: Option<usize>,
    #[serde(default)]
    pub functions: Vec<FunctionSpec>,
}

impl RunFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))
    }
}

/// Where the group came from, and the name used in reports.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub file: Option<RunFile>,
    pub spec: GroupSpec,
}

/// Resolves `--group`: `catalog:<name>` or a path to a run file.
pub fn resolve_group(arg: &str) -> Result<Source, CliError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        if lookup(name).is_none() {
            return Err(CliError::Input(format!("unknown catalog group `{name}`")));
        }
        let spec = GroupSpec::Named {
            name: name.to_string(),
        };
        return Ok(Source {
            name: name.to_string(),
            file: None,
            spec,
        });
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))?;
    let file = RunFile::parse(&text, arg)?;
    let name = match &file.group {
        GroupSpec::Named { name } => name.clone(),
        _ => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.into()),
    };
    Ok(Source {
        name,
        spec: file.group.clone(),
        file: Some(file),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_group_kind() {
        let f = RunFile::parse("[group]\nkind = \"named\"\nname = \"klein4\"\n", "t").unwrap();
        assert_eq!(
            f.group,
            GroupSpec::Named {
                name: "klein4".into()
            }
        );
        let f = RunFile::parse(
            "subgroup = \"full\"\ndimv = 3\n[group]\nkind = \"permutation\"\ngenerators = [[1,0,2]]\n",
            "t",
        )
        .unwrap();
        assert_eq!(f.subgroup, Some(SubgroupChoice::Full));
        assert_eq!(f.dimv, Some(3));
        assert_eq!(f.group.build().unwrap().order(), 2);
        let f = RunFile::parse("[group]\nkind = \"cayley\"\ntable = [[0,1],[1,0]]\n", "t").unwrap();
        assert_eq!(f.group.build().unwrap().order(), 2);
    }

    #[test]
    fn rejects_fields_from_other_kinds() {
        let err = RunFile::parse(
            "[group]\nkind = \"named\"\nname = \"klein4\"\ntable = [[0]]\n",
            "t",
        )
        .unwrap_err();
        assert!(err.to_string().contains("table"), "{err}");
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let err = RunFile::parse(
            "[group]\nkind = \"cayley\"\ntable = [[0,1],[1,0]\n",
            "g.toml",
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("g.toml:"), "{msg}");
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn functions_in_files() {
        let f = RunFile::parse(
            "[group]\nkind = \"named\"\nname = \"cyclic3\"\n[[functions]]\nkind = \"delta\"\nelement = 1\n[[functions]]\nkind = \"values\"\nvalues = [[1,0],[0,1],[0.5,0]]\n",
            "t",
        )
        .unwrap();
        assert_eq!(f.functions.len(), 2);
        assert_eq!(f.functions[0], FunctionSpec::Delta { element: 1 });
    }

    #[test]
    fn subgroup_flag_forms() {
        assert_eq!(
            "trivial".parse::<SubgroupChoice>().unwrap(),
            SubgroupChoice::Trivial
        );
        assert_eq!(
            "".parse::<SubgroupChoice>().unwrap(),
            SubgroupChoice::Trivial
        );
        assert_eq!(
            "full".parse::<SubgroupChoice>().unwrap(),
            SubgroupChoice::Full
        );
        assert_eq!(
            "1, 4".parse::<SubgroupChoice>().unwrap(),
            SubgroupChoice::Generated(vec![1, 4])
        );
        assert!("1,x".parse::<SubgroupChoice>().is_err());
    }

    #[test]
    fn non_latin_cayley_fails_at_build() {
        let f = RunFile::parse(
            "[group]\nkind = \"cayley\"\ntable = [[0,1,2],[1,1,0],[2,0,1]]\n",
            "t",
        )
        .unwrap();
        let err = f.group.build().unwrap_err();
        assert!(err.to_string().contains("NotLatinSquare"), "{err}");
    }
}
