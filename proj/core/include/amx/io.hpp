// File I/O: JSON serialization of groups, resolutions, and equivariant
// presentations, plus access to the bundled datasets.  Every document carries
// an explicit "schema" tag and round-trips through save/load.
#pragma once

#include "amx/amitsur.hpp"

namespace amx {

// directory holding the bundled data files; the compiled-in default can be
// overridden with the AMX_DATA_DIR environment variable
std::string data_dir();

// group references: "modular16", "klein", "cyclic:6"
FinGroup group_from_ref(const std::string& ref);
std::string group_ref(const FinGroup& G);  // throws if the group is not a builtin

// resolution files: {"schema": "resolution", "group": ref, "ranks": [...],
// "differentials": [matrix of entries, each a list of [coeff, word] pairs],
// "star": bool (apply the g -> g^-1 anti-involution on load)}
FreeResolution resolution_from_json(const std::string& text, bool validate = true);
std::string resolution_to_json(const FreeResolution& P);
FreeResolution load_resolution(const std::string& path, bool validate = true);
void save_resolution(const FreeResolution& P, const std::string& path);

// the rank 1,2,2,2,3,4 resolution over the order-16 modular group
FreeResolution bundled_m16_resolution();

// presentation files per the schema "presentation"
EquivariantPresentation presentation_from_json(const std::string& text);
std::string presentation_to_json(const EquivariantPresentation& p);
EquivariantPresentation load_presentation(const std::string& path);
void save_presentation(const EquivariantPresentation& p, const std::string& path);

// builtin presentations by name: "klein-p1", "klein-p1-enlarged",
// "toric-klein", "cyclic:m=4,b=2" (b a nonzero integer)
EquivariantPresentation builtin_presentation(const std::string& name);

// module files: {"schema": "gmodule", "group": ref, "generators": count,
// "relations": matrix (columns are relators), "actions": {generator: matrix}}
GModule gmodule_from_json(const std::string& text);
std::string gmodule_to_json(const GModule& M);
GModule load_gmodule(const std::string& path);
void save_gmodule(const GModule& M, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace amx
