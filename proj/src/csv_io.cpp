#include "ris/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ris {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[std::size_t(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string scan_csv(const ScanResult& result) {
    const bool cut = result.cut_angles_rad.has_value();
    std::string out;
    out.reserve(result.samples.size() * 160 + 256);

    if (cut)
        out += "angle_deg,";
    out += "x_m,y_m,z_m,re_Ex_Vpm,im_Ex_Vpm,re_Ey_Vpm,im_Ey_Vpm,re_Ez_Vpm,im_Ez_Vpm,abs_E_Vpm";
    if (cut)
        out += ",abs_E_dBVpm";
    for (const std::string& label : result.labels)
        out += ",abs_E_" + label + "_Vpm";
    out += ",diffuse_V2pm2,flags\n";

    constexpr double r2d = 180.0 / pi;
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
        const FieldSample& s = result.samples[i];
        if (cut) {
            out += format_double((*result.cut_angles_rad)[i] * r2d);
            out += ',';
        }
        out += format_double(s.point.x);
        out += ',';
        out += format_double(s.point.y);
        out += ',';
        out += format_double(s.point.z);
        const cplx comps[3] = {s.e_coherent.x, s.e_coherent.y, s.e_coherent.z};
        for (const cplx& c : comps) {
            out += ',';
            out += format_double(c.real());
            out += ',';
            out += format_double(c.imag());
        }
        double mag = s.total_magnitude();
        out += ',';
        out += format_double(mag);
        if (cut) {
            out += ',';
            out += format_double(mag > 0 ? to_db_v(mag) : -400.0);
        }
        for (const Contribution& c : s.contributions) {
            out += ',';
            out += format_double(magnitude(c.field));
        }
        out += ',';
        out += format_double(s.diffuse_v2);
        out += ',';
        out += std::to_string(s.flags);
        out += '\n';
    }
    return out;
}

std::string compare_csv(const ObservationGrid& grid, const CompareResult& cmp) {
    std::string out = "x_m,y_m,z_m,abs_E_integral_Vpm,abs_E_array_Vpm,rel_error,included\n";
    out.reserve(grid.size() * 96 + 64);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec3& p = grid.point(i);
        bool inc = cmp.rel_error[i] >= 0.0;
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += ',';
        out += format_double(p.z);
        out += ',';
        out += format_double(cmp.integral_mag[i]);
        out += ',';
        out += format_double(cmp.array_mag[i]);
        out += ',';
        out += format_double(inc ? cmp.rel_error[i] : -1.0);
        out += ',';
        out += inc ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string spreading_csv(const SpreadingResult& sw) {
    std::string out = "r_m,mean_abs_E_Vpm\n";
    for (std::size_t i = 0; i < sw.distance_m.size(); ++i) {
        out += format_double(sw.distance_m[i]);
        out += ',';
        out += format_double(sw.mean_amplitude[i]);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write output file: " + path);
    f << body;
    if (!f)
        throw std::runtime_error("write failed: " + path);
}

} // namespace ris
