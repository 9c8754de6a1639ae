use std::path::{Path, PathBuf};

use hodge_core::spheremesh::{
    build_colored_mesh, subdivided_octahedron, to_off, MeshAudit, MeshSidecar,
};
use serde::{Deserialize, Serialize};

use crate::{to_json, CliError, SCHEMA};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshSummary {
    pub schema: String,
    pub subdivisions: usize,
    pub vertices: usize,
    pub faces: usize,
    pub off: PathBuf,
    pub sidecar: PathBuf,
    pub audit: MeshAudit,
}

/// Sidecar path next to an OFF file.
pub fn sidecar_path(off: &Path) -> PathBuf {
    off.with_extension("json")
}

/// Build, audit and write the mesh; nothing is written unless the audit passes.
pub fn export_mesh(subdivisions: usize, out: &Path, corrupt: bool) -> Result<MeshSummary, CliError> {
    let mut t = subdivided_octahedron(subdivisions);
    if corrupt {
        let [a, b, _] = t.faces()[0];
        t = t
            .flip_edge(a, b)
            .map_err(|e| CliError::SuiteFailure(format!("mesh audit failed: {e}")))?;
    }
    let mesh = build_colored_mesh(t).map_err(|e| CliError::SuiteFailure(format!("mesh audit failed: {e}")))?;
    if !mesh.audit.passed() {
        return Err(CliError::SuiteFailure(format!("mesh audit failed: {:?}", mesh.audit)));
    }
    let sidecar = sidecar_path(out);
    std::fs::write(out, to_off(&mesh.mesh))?;
    std::fs::write(&sidecar, to_json(&MeshSidecar::new(SCHEMA, subdivisions, &mesh)))?;
    Ok(MeshSummary {
        schema: SCHEMA.to_string(),
        subdivisions,
        vertices: mesh.mesh.vertices().len(),
        faces: mesh.mesh.faces().len(),
        off: out.to_path_buf(),
        sidecar,
        audit: mesh.audit,
    })
}
