use std::fs;
use std::path::Path;

use chios::chi_map::chi_os;
use chios::elements::{check_permutation, word_set};
use chios::formats::{
    parse_beta, parse_chi_table, parse_circuit_list, parse_flat_basis, parse_vector_config,
};
use chios::realization::{chi_cordovil, chi_ot, circuits_from_vectors};
use chios::{
    BetaSystem, ChiKind, ChiMap, Element, ElementOrder, ElementSet, FlatBasisAssignment, Matroid,
    VectorConfig,
};

use crate::args::{Cli, InputKind};
use crate::CliError;

/// Everything a verb needs: the matroid, its χ-map and commutation
/// scalars, and the element order.
pub struct Session {
    pub matroid: Matroid,
    pub vectors: Option<VectorConfig>,
    pub chi: ChiMap,
    pub beta: BetaSystem,
    pub order: ElementOrder,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, result: chios::Result<T>) -> Result<T, CliError> {
    result.map_err(|e| CliError::from(e).context(&path.display().to_string()))
}

fn input_kind(cli: &Cli, path: &Path) -> Result<InputKind, CliError> {
    if let Some(kind) = cli.kind {
        return Ok(kind);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("vec") => Ok(InputKind::Vectors),
        Some("circ") => Ok(InputKind::Circuits),
        _ => Err(CliError::Input(format!(
            "cannot infer the input kind of {}; pass --kind vectors or --kind circuits",
            path.display()
        ))),
    }
}

/// Comma- or space-separated nonnegative integers.
pub fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Input(format!("{what}: expected an integer, got {t:?}")))
        })
        .collect()
}

/// A set of elements of the ground set, e.g. `1,5,6`.
pub fn parse_set(text: &str, n: usize, what: &str) -> Result<ElementSet, CliError> {
    let elements = parse_list(text, what)?;
    let set = ElementSet::checked(n, elements.iter().copied())
        .map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    if set.len() != elements.len() {
        return Err(CliError::Input(format!("{what}: repeated element")));
    }
    Ok(set)
}

/// A word of distinct elements, e.g. `1,2,5`.
pub fn parse_word(text: &str, n: usize, what: &str) -> Result<Vec<Element>, CliError> {
    let word = parse_list(text, what)?;
    parse_set(text, n, what)?;
    word_set(&word).map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    Ok(word)
}

/// One-line form of `id`, `oneline:3,1,2` or `cycle:(1,3,2)` on `m` letters.
/// Cycles map each entry to the next one; digits may be run together when
/// every letter is a single digit, as in `(132)`.
pub fn parse_sigma(text: &str, m: usize) -> Result<Vec<usize>, CliError> {
    let sigma = if text == "id" {
        (1..=m).collect()
    } else if let Some(rest) = text.strip_prefix("oneline:") {
        parse_list(rest, "sigma")?
    } else if let Some(rest) = text.strip_prefix("cycle:") {
        let mut sigma: Vec<usize> = (1..=m).collect();
        let mut seen = vec![false; m + 1];
        for group in rest
            .split(')')
            .map(|g| g.trim().trim_start_matches('('))
            .filter(|g| !g.is_empty())
        {
            let letters = if group.contains(',') || group.contains(char::is_whitespace) {
                parse_list(group, "sigma")?
            } else {
                group
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| CliError::Input(format!("sigma: unexpected {c:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            for (k, &a) in letters.iter().enumerate() {
                if a == 0 || a > m || seen[a] {
                    return Err(CliError::Input(format!(
                        "sigma: invalid cycle {group:?} on {m} letters"
                    )));
                }
                seen[a] = true;
                sigma[a - 1] = letters[(k + 1) % letters.len()];
            }
        }
        sigma
    } else {
        return Err(CliError::Input(format!(
            "sigma must be id, oneline:<...> or cycle:<...>, got {text:?}"
        )));
    };
    check_permutation(&sigma, m).map_err(|e| CliError::Input(format!("sigma: {e}")))?;
    Ok(sigma)
}

fn parse_order(text: &str, n: usize) -> Result<ElementOrder, CliError> {
    if text == "natural" {
        return Ok(ElementOrder::natural(n));
    }
    let Some(rest) = text.strip_prefix("pi:") else {
        return Err(CliError::Input(format!(
            "order must be natural or pi:<...>, got {text:?}"
        )));
    };
    let sequence = parse_list(rest, "order")?;
    ElementOrder::from_sequence(sequence)
        .and_then(|o| {
            if o.n() == n {
                Ok(o)
            } else {
                Err(chios::Error::SizeMismatch(format!(
                    "order lists {} elements, the ground set has {n}",
                    o.n()
                )))
            }
        })
        .map_err(|e| CliError::Input(format!("order: {e}")))
}

impl Session {
    pub fn load(cli: &Cli) -> Result<Session, CliError> {
        let path = cli
            .input
            .as_deref()
            .ok_or_else(|| CliError::Input("--input is required".into()))?;
        let text = read_file(path)?;
        let (matroid, vectors) = match input_kind(cli, path)? {
            InputKind::Vectors => {
                let v = in_file(path, parse_vector_config(&text))?;
                (circuits_from_vectors(&v), Some(v))
            }
            InputKind::Circuits => (in_file(path, parse_circuit_list(&text))?, None),
        };

        let assignment = match (cli.flat_basis.as_str(), &vectors) {
            ("lex", _) => FlatBasisAssignment::lex(),
            (arg, Some(v)) if arg.starts_with("file:") => {
                let file = Path::new(&arg[5..]);
                in_file(file, parse_flat_basis(&read_file(file)?, v, &matroid))?
            }
            (arg, None) if arg.starts_with("file:") => {
                return Err(CliError::Domain(
                    "--flat-basis needs a vector configuration".into(),
                ))
            }
            (arg, _) => {
                return Err(CliError::Input(format!(
                    "flat basis must be lex or file:<path>, got {arg:?}"
                )))
            }
        };

        let needs_vectors = |kind: &str| {
            vectors.as_ref().ok_or_else(|| {
                CliError::Domain(format!("--chi {kind} needs a vector configuration"))
            })
        };
        let chi = match cli.chi.as_str() {
            "os" => chi_os(&matroid),
            "ot" => chi_ot(needs_vectors("ot")?, &matroid, &assignment)?,
            "cordovil" => chi_cordovil(needs_vectors("cordovil")?, &matroid, &assignment)?,
            arg if arg.starts_with("file:") => {
                let file = Path::new(&arg[5..]);
                in_file(file, parse_chi_table(&read_file(file)?, &matroid))?
            }
            other => {
                return Err(CliError::Input(format!(
                    "chi must be os, ot, cordovil or file:<path>, got {other:?}"
                )))
            }
        };

        let beta = match cli.beta.as_deref() {
            None if chi.kind() == ChiKind::Custom => BetaSystem::Exterior,
            None => BetaSystem::default_for(chi.kind()),
            Some("exterior") => BetaSystem::Exterior,
            Some("commutative") => BetaSystem::Commutative,
            Some(arg) if arg.starts_with("file:") => {
                let file = Path::new(&arg[5..]);
                let beta = in_file(file, parse_beta(&read_file(file)?))?;
                if beta.ground_size() != Some(matroid.n()) {
                    return Err(CliError::Domain(format!(
                        "commutation scalars are for {:?} elements, the matroid has {}",
                        beta.ground_size(),
                        matroid.n()
                    )));
                }
                beta
            }
            Some(other) => {
                return Err(CliError::Input(format!(
                    "beta must be exterior, commutative or file:<path>, got {other:?}"
                )))
            }
        };

        let order = parse_order(&cli.order, matroid.n())?;
        Ok(Session {
            matroid,
            vectors,
            chi,
            beta,
            order,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_notations() {
        assert_eq!(parse_sigma("id", 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_sigma("oneline:1,3,2", 3).unwrap(), vec![1, 3, 2]);
        // 1 -> 3 -> 2 -> 1
        assert_eq!(parse_sigma("cycle:(132)", 3).unwrap(), vec![3, 1, 2]);
        assert_eq!(parse_sigma("cycle:(1,3,2)", 3).unwrap(), vec![3, 1, 2]);
        assert_eq!(parse_sigma("cycle:(12)(34)", 4).unwrap(), vec![2, 1, 4, 3]);
        assert_eq!(parse_sigma("cycle:(23)", 3).unwrap(), vec![1, 3, 2]);
        assert!(parse_sigma("cycle:(14)", 3).is_err());
        assert!(parse_sigma("cycle:(1)(1)", 3).is_err());
        assert!(parse_sigma("oneline:1,1,2", 3).is_err());
        assert!(parse_sigma("swap", 3).is_err());
    }

    #[test]
    fn sets_and_words() {
        assert_eq!(
            parse_set("1,5,6", 6, "target").unwrap().to_vec(),
            vec![1, 5, 6]
        );
        assert_eq!(parse_set("1 5", 6, "target").unwrap().to_vec(), vec![1, 5]);
        assert!(parse_set("1,7", 6, "target").is_err());
        assert!(parse_set("1,1", 6, "target").is_err());
        assert!(parse_set("a", 6, "target").is_err());
        assert_eq!(parse_word("5,1,2", 6, "word").unwrap(), vec![5, 1, 2]);
    }

    #[test]
    fn orders() {
        assert!(parse_order("natural", 4).unwrap().is_natural());
        assert_eq!(
            parse_order("pi:2,3,4,1", 4).unwrap().sequence(),
            &[2, 3, 4, 1]
        );
        assert!(parse_order("pi:2,3,1", 4).is_err());
        assert!(parse_order("reverse", 4).is_err());
    }
}
