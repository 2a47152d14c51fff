#include "gds/report.hpp"

#include <cstdio>

namespace gds {

std::string format_full(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::string format_human(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", x);
    return buffer;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "eps,v_formula,v_oracle,abs_err,rel_err,within_bound\n";
    for (const SweepRow& r : rows) {
        out += format_full(r.eps);
        out += ',';
        out += format_full(r.v_formula);
        out += ',';
        out += format_full(r.v_oracle);
        out += ',';
        out += format_full(r.abs_err);
        out += ',';
        out += format_full(r.rel_err);
        out += ',';
        out += r.within_bound ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string dims_json(const ComplexDimensionSet& dims) {
    std::string out = "{\n";
    out += "  \"method\": \"";
    out += (dims.method == DimensionMethod::lattice) ? "lattice" : "generic";
    out += "\",\n";
    out += "  \"strip\": {\"c_l\": " + format_full(dims.strip.left) +
           ", \"c\": " + format_full(dims.strip.right) +
           ", \"height\": " + format_full(dims.strip.height) + "},\n";
    if (dims.lattice) {
        out += "  \"lattice\": {\"lambda\": " + format_full(dims.lattice->lambda) +
               ", \"period\": " + format_full(dims.lattice->period) + "},\n";
    }
    out += "  \"zeros\": [\n";
    for (std::size_t i = 0; i < dims.zeros.size(); ++i) {
        const ComplexZero& z = dims.zeros[i];
        out += "    {\"re\": " + format_full(z.location.real()) +
               ", \"im\": " + format_full(z.location.imag()) +
               ", \"multiplicity\": " + std::to_string(z.multiplicity) + "}";
        if (i + 1 < dims.zeros.size()) out += ",";
        out += "\n";
    }
    out += "  ]\n}\n";
    return out;
}

}  // namespace gds
