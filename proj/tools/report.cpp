#include "report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace commdiag::cli {

std::string digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

void write_string(std::string& out, const std::string& s) {
    // nlohmann's dump already does correct escaping for a lone string
    out += json(s).dump();
}

void write_value(std::string& out, const json& v, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
    switch (v.type()) {
        case json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, item] : v.items()) {  // std::map: keys already sorted
                if (!first) out += ",\n";
                first = false;
                out += pad;
                write_string(out, key);
                out += ": ";
                write_value(out, item, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // arrays of scalars stay on one line
            bool flat = true;
            for (const auto& item : v) flat = flat && !item.is_structured();
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    write_value(out, v[i], depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                write_value(out, v[i], depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case json::value_t::number_float: {
            const double x = v.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            return;
        }
        case json::value_t::string:
            write_string(out, v.get<std::string>());
            return;
        default:
            out += v.dump();
            return;
    }
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

std::string render_json(const json& value) {
    std::string out;
    write_value(out, value, 0);
    out += '\n';
    return out;
}

json spectrum_json(std::span<const Complex> values) {
    json arr = json::array();
    for (const Complex& z : values) arr.push_back(json::array({z.real(), z.imag()}));
    return arr;
}

json spectrum_json(std::span<const double> values) {
    json arr = json::array();
    for (double x : values) arr.push_back(json::array({x, 0.0}));
    return arr;
}

std::string error_type(const Error& err) {
    if (dynamic_cast<const ParseError*>(&err)) return "ParseError";
    if (dynamic_cast<const DimensionError*>(&err)) return "DimensionError";
    if (dynamic_cast<const InvalidMatrix*>(&err)) return "InvalidMatrix";
    if (dynamic_cast<const InvalidPermutation*>(&err)) return "InvalidPermutation";
    if (dynamic_cast<const InvalidSpec*>(&err)) return "InvalidSpec";
    if (dynamic_cast<const IoError*>(&err)) return "IoError";
    if (dynamic_cast<const NotCommuting*>(&err)) return "NotCommuting";
    if (dynamic_cast<const NotStarCommuting*>(&err)) return "NotStarCommuting";
    if (dynamic_cast<const NoCorrespondence*>(&err)) return "NoCorrespondence";
    if (dynamic_cast<const SingularMatrixError*>(&err)) return "SingularMatrixError";
    if (dynamic_cast<const NotDiagonalizable*>(&err)) return "NotDiagonalizable";
    if (dynamic_cast<const NonConvergence*>(&err)) return "NonConvergence";
    if (dynamic_cast<const RankDeficientCluster*>(&err)) return "RankDeficientCluster";
    if (dynamic_cast<const AmbiguousClustering*>(&err)) return "AmbiguousClustering";
    if (dynamic_cast<const BlockLeakage*>(&err)) return "BlockLeakage";
    if (dynamic_cast<const InternalDiagnostic*>(&err)) return "InternalDiagnostic";
    return "Error";
}

Report::Report(std::string command, const ToleranceConfig& tol) : command_(std::move(command)), tol_(tol) {}

void Report::add_input(const std::string& role, const std::string& path, std::string_view bytes) {
    inputs_[role] = {{"path", path}, {"digest", digest(bytes)}};
}

void Report::add_residual(const std::string& name, double value, double threshold) {
    residuals_[name] = value;
    thresholds_[name] = threshold;
}

void Report::add_spectrum(const std::string& name, json values) { spectra_[name] = std::move(values); }

void Report::set_invocation(const std::vector<std::string>& args) { invocation_ = args; }

void Report::fail(const Error& err) { fail(error_type(err), err.category(), err.what()); }

void Report::fail(const std::string& type, Error::Category category, const std::string& message) {
    failed_ = true;
    failure_category_ = category;
    const char* name = category == Error::Category::input ? "input" : category == Error::Category::check ? "check" : "numerical";
    error_ = {{"type", type}, {"category", name}, {"message", message}};
}

std::string Report::status() const {
    if (failed_) return failure_category_ == Error::Category::check ? "check_failed" : "error";
    for (const auto& [name, value] : residuals_.items()) {
        const double v = value.get<double>();
        if (!(v <= thresholds_[name].get<double>())) return "check_failed";
    }
    return "ok";
}

int Report::exit_code() const {
    if (failed_) {
        switch (failure_category_) {
            case Error::Category::input: return 2;
            case Error::Category::check: return 1;
            case Error::Category::numerical: return 3;
        }
    }
    return status() == "ok" ? 0 : 1;
}

json Report::to_json() const {
    json j = {
        {"command", command_},
        {"inputs", inputs_},
        {"invocation", invocation_},
        {"residuals", residuals_},
        {"thresholds", thresholds_},
        {"spectra", spectra_},
        {"details", details_},
        {"status", status()},
        {"tolerances",
         {{"rtol", tol_.rtol}, {"atol", tol_.atol}, {"cluster_tol", tol_.cluster_tol}, {"cond_max", tol_.cond_max}}},
    };
    if (failed_) j["error"] = error_;
    return j;
}

std::string Report::to_text() const {
    std::string out = command_ + ": " + status() + "\n";
    if (failed_) {
        out += "  error " + error_["type"].get<std::string>() + ": " + error_["message"].get<std::string>() + "\n";
    }
    for (const auto& [role, info] : inputs_.items()) {
        out += "  input " + role + " = " + info["path"].get<std::string>() + " (" + info["digest"].get<std::string>() + ")\n";
    }
    for (const auto& [name, value] : residuals_.items()) {
        const double v = value.get<double>();
        const double t = thresholds_[name].get<double>();
        out += "  " + name + " = " + format_number(v) + (v <= t ? " <= " : " > ") + format_number(t) + "\n";
    }
    for (const auto& [name, values] : spectra_.items()) {
        out += "  " + name + ":";
        for (const auto& pair : values) {
            const double re = pair[0].get<double>();
            const double im = pair[1].get<double>();
            out += " " + format_number(re);
            if (im != 0.0) out += (im < 0 ? "-" : "+") + format_number(std::abs(im)) + "i";
        }
        out += "\n";
    }
    for (const auto& [name, value] : details_.items()) {
        if (value.is_string()) {
            const std::string s = value.get<std::string>();
            if (s.find('\n') != std::string::npos) {
                out += "  " + name + ":\n" + s;
                continue;
            }
            out += "  " + name + ": " + s + "\n";
        } else {
            out += "  " + name + ": " + value.dump() + "\n";
        }
    }
    return out;
}

}  // namespace commdiag::cli
