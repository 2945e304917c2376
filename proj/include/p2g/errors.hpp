#pragma once

#include <stdexcept>
#include <string>

namespace p2g {

enum class Errc {
    malformed_xml,
    missing_field,
    duplicate_group_id,
    schema_violation,
    io_error,
    network_error,
    not_found,
    decompress_error,
    unknown_node,
    same_package,
    unknown_group,
    empty_group,
    singleton_corpus,
    empty_corpus,
    empty_input,
    bad_hyperparam,
    length_mismatch,
    too_few_points,
    usage_error,
};

const char* errc_name(Errc code);

/// Typed error carried by every failure path in the library. The CLI maps
/// usage_error to exit 1 and everything else to exit 2.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace p2g
