//! `name:params` family specs for `--construct` and `construct`.

use specmatch::graph::{
    attached_clique, complete, complete_bipartite, construct_b_member, construct_exception, cycle,
    empty, path, BFamilySpec,
};
use specmatch::{Graph, GraphError};

pub const FAMILY_HELP: &str = "complete:n, empty:n, cycle:n, path:n, complete-bipartite:a,b, \
b-family:delta,k,y, exception:delta,<complete|empty|path|cycle>, attached-clique:t";

fn numbers(params: &str, want: usize, spec: &str) -> Result<Vec<usize>, GraphError> {
    let parts: Vec<&str> = params.split(',').map(str::trim).collect();
    if parts.len() != want {
        return Err(GraphError::InvalidParameter(format!(
            "`{spec}` needs {want} comma-separated parameter(s)"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<usize>().map_err(|_| {
                GraphError::InvalidParameter(format!(
                    "`{p}` in `{spec}` is not a non-negative integer"
                ))
            })
        })
        .collect()
}

/// Builds the graph named by `spec`. Underscores and hyphens are
/// interchangeable in family names.
pub fn construct(spec: &str) -> Result<Graph, GraphError> {
    let (name, params) = spec.split_once(':').ok_or_else(|| {
        GraphError::InvalidParameter(format!(
            "`{spec}` is not of the form name:params ({FAMILY_HELP})"
        ))
    })?;
    let name = name.trim().to_ascii_lowercase().replace('_', "-");
    match name.as_str() {
        "complete" => complete(numbers(params, 1, spec)?[0]),
        "empty" => empty(numbers(params, 1, spec)?[0]),
        "cycle" => cycle(numbers(params, 1, spec)?[0]),
        "path" => path(numbers(params, 1, spec)?[0]),
        "complete-bipartite" => {
            let v = numbers(params, 2, spec)?;
            complete_bipartite(v[0], v[1])
        }
        "b-family" => {
            let v = numbers(params, 3, spec)?;
            construct_b_member(&BFamilySpec::from_parts(v[0], v[1], v[2])?)
        }
        "exception" => {
            let (d, h) = params.split_once(',').ok_or_else(|| {
                GraphError::InvalidParameter(format!("`{spec}` needs delta,<family>"))
            })?;
            let delta = numbers(d, 1, spec)?[0];
            let h = match h.trim() {
                "complete" => complete(delta),
                "empty" => empty(delta),
                "path" => path(delta),
                "cycle" => cycle(delta),
                other => Err(GraphError::InvalidParameter(format!(
                    "unknown inner family `{other}` (expected complete, empty, path or cycle)"
                ))),
            }?;
            construct_exception(delta, &h)
        }
        "attached-clique" => attached_clique(numbers(params, 1, spec)?[0]),
        other => Err(GraphError::InvalidParameter(format!(
            "unknown family `{other}` (expected one of {FAMILY_HELP})"
        ))),
    }
}
