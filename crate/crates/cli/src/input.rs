//! Resolution of groups, pairs and extensions from flags and JSON documents.

use std::sync::Arc;

use pairkit::catalog::Catalog;
use pairkit::hom::isomorphism;
use pairkit::pair::{GroupAction, GroupPair};
use pairkit::structure::normal_subgroup_indices;
use pairkit::{FiniteGroup, GroupError, GroupHom, Permutation};
use serde_json::Value;

use crate::CliError;

/// Largest group accepted from explicit generators.
pub const MAX_INPUT_ORDER: usize = 4096;

/// A pair together with the names it was resolved from.
pub struct ResolvedPair {
    pub group: String,
    pub normal: String,
    /// Position of `N` in the normal-subgroup list of `G`.
    pub position: usize,
    pub pair: GroupPair,
}

fn input(path: &str, message: impl Into<String>) -> CliError {
    CliError::Input {
        path: Some(path.to_string()),
        message: message.into(),
    }
}

/// Catalog group by name.
pub fn named_group(catalog: &Catalog, name: &str) -> Result<(String, Arc<FiniteGroup>), CliError> {
    let entry = catalog.get(name).ok_or_else(|| CliError::Input {
        path: None,
        message: format!("no catalog group named {name:?}"),
    })?;
    Ok((entry.name().to_string(), entry.group.clone()))
}

/// Picks a normal subgroup of `g` from `NAME`, `NAME@k` (k-th match) or `#p` (position).
pub fn pick_normal(catalog: &Catalog, g: &Arc<FiniteGroup>, group_name: &str, spec: &str) -> Result<ResolvedPair, CliError> {
    let normals = normal_subgroup_indices(g);
    let err = |message: String| CliError::Input { path: None, message };
    let position = if let Some(p) = spec.strip_prefix('#') {
        let p: usize = p.parse().map_err(|_| err(format!("bad position in {spec:?}")))?;
        if p >= normals.len() {
            return Err(err(format!("{group_name} has {} normal subgroups; position {p} is out of range", normals.len())));
        }
        p
    } else {
        let (name, occurrence) = match spec.split_once('@') {
            Some((n, k)) => (n, k.parse::<usize>().map_err(|_| err(format!("bad occurrence in {spec:?}")))?),
            None => (spec, 0),
        };
        let target = catalog
            .get(name)
            .ok_or_else(|| err(format!("no catalog group named {name:?}")))?
            .group
            .clone();
        let mut matches = Vec::new();
        for (k, idx) in normals.iter().enumerate() {
            if idx.len() != target.order() {
                continue;
            }
            let n = GroupPair::from_indices(g.clone(), idx)?;
            if isomorphism(n.n(), &target)?.is_some() {
                matches.push(k);
            }
        }
        *matches.get(occurrence).ok_or_else(|| {
            err(format!(
                "{group_name} has {} normal subgroups isomorphic to {name}; occurrence {occurrence} requested",
                matches.len()
            ))
        })?
    };
    let pair = GroupPair::from_indices(g.clone(), &normals[position])?;
    let normal = catalog.name_of(pair.n());
    Ok(ResolvedPair {
        group: group_name.to_string(),
        normal,
        position,
        pair,
    })
}

/// Pair from `G:N` syntax, where `N` follows [`pick_normal`].
pub fn pair_from_spec(catalog: &Catalog, spec: &str) -> Result<ResolvedPair, CliError> {
    let (g, n) = spec.split_once(':').ok_or_else(|| CliError::Input {
        path: None,
        message: format!("expected GROUP:NORMAL, got {spec:?}"),
    })?;
    pair_from_names(catalog, g, n)
}

pub fn pair_from_names(catalog: &Catalog, group: &str, normal: &str) -> Result<ResolvedPair, CliError> {
    let (name, g) = named_group(catalog, group)?;
    pick_normal(catalog, &g, &name, normal)
}

fn field<'v>(v: &'v Value, path: &str, key: &str) -> Result<&'v Value, CliError> {
    v.get(key).ok_or_else(|| input(path, format!("missing field {key:?}")))
}

fn array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| input(path, "expected an array"))
}

fn permutation(v: &Value, path: &str, degree: usize) -> Result<Permutation, CliError> {
    let images: Vec<u32> = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| input(&format!("{path}/{i}"), "expected a non-negative integer"))
        })
        .collect::<Result<_, _>>()?;
    if images.len() != degree {
        return Err(input(path, format!("expected {degree} images, got {}", images.len())));
    }
    Permutation::from_images(images).map_err(|e| input(path, e.to_string()))
}

fn permutations(v: &Value, path: &str, degree: usize) -> Result<Vec<Permutation>, CliError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| permutation(p, &format!("{path}/{i}"), degree))
        .collect()
}

fn usize_field(v: &Value, path: &str, key: &str) -> Result<usize, CliError> {
    field(v, path, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| input(&format!("{path}/{key}"), "expected a non-negative integer"))
}

/// `{"name": ...}` or `{"degree": n, "generators": [[...], ...]}`.
pub fn group_from_json(catalog: &Catalog, v: &Value, path: &str) -> Result<(String, Arc<FiniteGroup>), CliError> {
    if !v.is_object() {
        return Err(input(path, "expected an object"));
    }
    if let Some(name) = v.get("name") {
        let name = name.as_str().ok_or_else(|| input(&format!("{path}/name"), "expected a string"))?;
        return named_group(catalog, name).map_err(|e| input(&format!("{path}/name"), e.to_string()));
    }
    let degree = usize_field(v, path, "degree")?;
    let gens_path = format!("{path}/generators");
    let gens = permutations(field(v, path, "generators")?, &gens_path, degree)?;
    let g = FiniteGroup::generate(degree, gens, MAX_INPUT_ORDER).map_err(|e| match e {
        GroupError::TooLarge { .. } => CliError::Cap(format!("{path}: {e}")),
        other => input(path, other.to_string()),
    })?;
    let g = Arc::new(g);
    Ok((catalog.name_of(&g), g))
}

/// `{"name": "C2", "occurrence": k}`, `{"position": p}` or `{"generators": [...]}`.
pub fn normal_from_json(catalog: &Catalog, g: &Arc<FiniteGroup>, group_name: &str, v: &Value, path: &str) -> Result<ResolvedPair, CliError> {
    if !v.is_object() {
        return Err(input(path, "expected an object"));
    }
    let relabel = |e: CliError, key: &str| match e {
        CliError::Input { path: None, message } => input(&format!("{path}/{key}"), message),
        other => other,
    };
    if let Some(name) = v.get("name") {
        let name = name.as_str().ok_or_else(|| input(&format!("{path}/name"), "expected a string"))?;
        let spec = match v.get("occurrence") {
            None => name.to_string(),
            Some(k) => {
                let k = k.as_u64().ok_or_else(|| input(&format!("{path}/occurrence"), "expected a non-negative integer"))?;
                format!("{name}@{k}")
            }
        };
        return pick_normal(catalog, g, group_name, &spec).map_err(|e| relabel(e, "name"));
    }
    if v.get("position").is_some() {
        let p = usize_field(v, path, "position")?;
        return pick_normal(catalog, g, group_name, &format!("#{p}")).map_err(|e| relabel(e, "position"));
    }
    let gens_path = format!("{path}/generators");
    let gens = permutations(field(v, path, "generators")?, &gens_path, g.degree())?;
    let mut idx = Vec::with_capacity(gens.len());
    for (i, p) in gens.iter().enumerate() {
        idx.push(
            g.index_of(p)
                .ok_or_else(|| input(&format!("{gens_path}/{i}"), "not an element of the group"))?,
        );
    }
    let closure = g.closure(&idx);
    if !g.is_normal_indices(&closure) {
        return Err(input(path, "generated subgroup is not normal"));
    }
    let pair = GroupPair::from_indices(g.clone(), &closure)?;
    let position = normal_subgroup_indices(g)
        .iter()
        .position(|n| *n == closure)
        .expect("normal subgroup is listed");
    Ok(ResolvedPair {
        group: group_name.to_string(),
        normal: catalog.name_of(pair.n()),
        position,
        pair,
    })
}

/// A candidate extension read from JSON.
pub struct ExtensionInput {
    pub pair: ResolvedPair,
    pub m_name: String,
    pub sigma: GroupHom,
    pub action: GroupAction,
}

/// Reads `group`, optional `normal` (default: the image of `sigma`), `m`, `sigma`
/// (one image in `G` per generator of `M`) and `action` (for each generator of `G`,
/// the images of the generators of `M`).
pub fn extension_from_json(catalog: &Catalog, doc: &Value) -> Result<ExtensionInput, CliError> {
    if !doc.is_object() {
        return Err(input("", "expected an object"));
    }
    let (g_name, g) = group_from_json(catalog, field(doc, "", "group")?, "/group")?;
    let (m_name, m) = group_from_json(catalog, field(doc, "", "m")?, "/m")?;
    let m_gens = m.generator_indices();
    let g_gens = g.generator_indices();

    let sigma_v = array(field(doc, "", "sigma")?, "/sigma")?;
    if sigma_v.len() != m_gens.len() {
        return Err(input("/sigma", format!("expected {} images (one per generator of M), got {}", m_gens.len(), sigma_v.len())));
    }
    let mut sigma_images = Vec::with_capacity(m_gens.len());
    for (i, v) in sigma_v.iter().enumerate() {
        let path = format!("/sigma/{i}");
        let p = permutation(v, &path, g.degree())?;
        sigma_images.push(g.index_of(&p).ok_or_else(|| input(&path, "not an element of G"))?);
    }
    let sigma = GroupHom::from_images(m.clone(), g.clone(), &m_gens, &sigma_images).map_err(|e| input("/sigma", e.to_string()))?;

    let action_v = array(field(doc, "", "action")?, "/action")?;
    if action_v.len() != g_gens.len() {
        return Err(input("/action", format!("expected {} entries (one per generator of G), got {}", g_gens.len(), action_v.len())));
    }
    let mut tables = Vec::with_capacity(g_gens.len());
    for (j, v) in action_v.iter().enumerate() {
        let path = format!("/action/{j}");
        let images = permutations(v, &path, m.degree())?;
        if images.len() != m_gens.len() {
            return Err(input(&path, format!("expected {} images (one per generator of M), got {}", m_gens.len(), images.len())));
        }
        let mut targets = Vec::with_capacity(images.len());
        for (i, p) in images.iter().enumerate() {
            targets.push(m.index_of(p).ok_or_else(|| input(&format!("{path}/{i}"), "not an element of M"))?);
        }
        let alpha = GroupHom::from_images(m.clone(), m.clone(), &m_gens, &targets).map_err(|e| input(&path, e.to_string()))?;
        if !alpha.is_isomorphism() {
            return Err(input(&path, "images do not define an automorphism of M"));
        }
        tables.push(alpha.table().to_vec());
    }
    let action = GroupAction::from_generator_images(m.clone(), g.clone(), &tables).map_err(|e| input("/action", e.to_string()))?;

    let pair = match doc.get("normal") {
        Some(v) => normal_from_json(catalog, &g, &g_name, v, "/normal")?,
        None => {
            let image = sigma.image_indices();
            if !g.is_normal_indices(&image) {
                return Err(input("/sigma", "image of sigma is not normal; give /normal explicitly"));
            }
            let pair = GroupPair::from_indices(g.clone(), &image)?;
            let position = normal_subgroup_indices(&g).iter().position(|n| *n == image).expect("listed");
            ResolvedPair {
                group: g_name.clone(),
                normal: catalog.name_of(pair.n()),
                position,
                pair,
            }
        }
    };
    Ok(ExtensionInput {
        pair,
        m_name,
        sigma,
        action,
    })
}

/// Generators of `G` and `N` as image lists and cycle strings.
pub fn describe_pair(r: &ResolvedPair) -> Value {
    let g = r.pair.g();
    let n_gens: Vec<&Permutation> = g
        .generating_set_within(r.pair.n_in_g())
        .into_iter()
        .map(|i| g.element(i))
        .collect();
    serde_json::json!({
        "group": r.group,
        "group_order": g.order(),
        "normal": r.normal,
        "normal_order": r.pair.n().order(),
        "normal_position": r.position,
        "degree": g.degree(),
        "normal_generators": n_gens.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
    })
}
