#pragma once

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "deschom/formats.hpp"

namespace deschom::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(DESCHOM_FIXTURES) / name;
}

inline std::string fixture_text(const std::string& name) {
    auto body = read_file(fixture_path(name));
    if (!body) throw std::runtime_error("missing fixture " + name);
    return *body;
}

inline CellComplex load_complex(const std::string& name) {
    auto r = parse_complex(fixture_text(name), name);
    if (!r.ok()) throw std::runtime_error("fixture " + name + " does not parse");
    return *r.value;
}

inline ProbeAssignment load_probe(const std::shared_ptr<const CellComplex>& k, const std::string& csv) {
    auto r = parse_descriptors(fixture_text(csv), *k, csv);
    if (!r.ok()) throw std::runtime_error("fixture " + csv + " does not parse");
    return assign_probe(k, *r.value);
}

inline ProbeAssignment load_probe(const std::string& complex, const std::string& csv) {
    return load_probe(std::make_shared<const CellComplex>(load_complex(complex)), csv);
}

} // namespace deschom::testing
