#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "commdiag/errors.hpp"
#include "commdiag/matrix.hpp"
#include "commdiag/tolerance.hpp"

namespace commdiag::cli {

using json = nlohmann::json;

// 64-bit FNV-1a of the bytes, rendered "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

// Compact JSON with keys in byte order and every floating value printed
// with 17 significant digits. Non-finite values become null.
std::string render_json(const json& value);

// [[re, im], ...]
json spectrum_json(std::span<const Complex> values);
json spectrum_json(std::span<const double> values);

class Report {
public:
    explicit Report(std::string command, const ToleranceConfig& tol);

    void add_input(const std::string& role, const std::string& path, std::string_view bytes);
    void add_residual(const std::string& name, double value, double threshold);
    void add_spectrum(const std::string& name, json values);
    void set_invocation(const std::vector<std::string>& args);
    json& details() { return details_; }

    // Marks the run as failed by the given error; the category decides the
    // status (check failures are "check_failed", the rest "error").
    void fail(const Error& err);
    void fail(const std::string& type, Error::Category category, const std::string& message);

    // ok when every residual is within its threshold and nothing failed.
    std::string status() const;
    int exit_code() const;

    json to_json() const;
    std::string to_text() const;

private:
    std::string command_;
    ToleranceConfig tol_;
    json inputs_ = json::object();
    json residuals_ = json::object();
    json thresholds_ = json::object();
    json spectra_ = json::object();
    json details_ = json::object();
    json invocation_ = json::array();
    bool failed_ = false;
    Error::Category failure_category_ = Error::Category::input;
    json error_;
};

// Name of the concrete error type, e.g. "NotDiagonalizable".
std::string error_type(const Error& err);

}  // namespace commdiag::cli
