#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rmt {

// Preset experiment bundles; one per results table / figure panel set.
struct RecipeInfo {
    std::string name;
    std::string description;
    std::vector<std::string> jobs;
};

std::vector<RecipeInfo> recipe_list();

// Runs every job of the named recipe into out_dir/<recipe>/<job>/ and
// writes a summary.txt next to them.  Returns the job directories.
std::vector<std::string> run_recipe(const std::string& name, const std::string& out_dir,
                                    int threads = 1,
                                    std::optional<std::uint64_t> seed_override = {});

}  // namespace rmt
