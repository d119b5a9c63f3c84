#pragma once

// On-disk JSON cache for character tables and Bessel-function tables, keyed
// by (p, f, n, orbit exponent) and the psi parameters.  Files carry a format
// version and a field stamp; anything stale or inconsistent is recomputed.

#include "cuspgamma/bessel.hpp"
#include "cuspgamma/characters.hpp"
#include "cuspgamma/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <string>

namespace cuspgamma {

class DiskCache {
public:
    static constexpr int format_version = 1;

    explicit DiskCache(std::string dir = "") : dir_(std::move(dir)) {
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }

    bool enabled() const { return !dir_.empty(); }

    // ---- character tables ----

    bool load(const CuspidalRep& rep) const {
        if (!enabled()) return false;
        Json j;
        if (!read_file(char_table_path(rep), j)) return false;
        if (!stamp_ok(j, *rep.field()) || j.at("orbit").get<std::vector<long>>() != rep.orbit())
            return false;
        std::map<ClassKey, CycNum> table;
        for (const auto& entry : j.at("entries"))
            table.emplace(classkey_from_json(entry.at("key")), cyc_from_json(entry.at("value")));
        rep.absorb_table(table, j.value("validated", false));
        return true;
    }

    void store(const CuspidalRep& rep) const {
        if (!enabled()) return;
        Json entries = Json::array();
        for (const auto& [k, v] : rep.table_snapshot())
            entries.push_back(Json{{"key", classkey_to_json(k)}, {"value", cyc_to_json(v)}});
        Json j{{"format_version", format_version},
               {"field", field_to_json(*rep.field())},
               {"n", rep.n()},
               {"orbit", rep.orbit()},
               {"validated", rep.validated()},
               {"entries", entries}};
        write_file(char_table_path(rep), j);
    }

    // ---- Bessel tables ----

    bool load(BesselFn& J) const {
        if (!enabled()) return false;
        Json j;
        if (!read_file(bessel_table_path(J), j)) return false;
        if (!stamp_ok(j, *J.rep().field()) ||
            j.at("orbit").get<std::vector<long>>() != J.rep().orbit())
            return false;
        std::vector<std::pair<Mat, CycNum>> entries;
        for (const auto& entry : j.at("entries"))
            entries.emplace_back(mat_from_json(entry.at("rep"), J.rep().field()),
                                 cyc_from_json(entry.at("value")));
        J.absorb(entries);
        return true;
    }

    void store(BesselFn& J) const {
        if (!enabled()) return;
        Json entries = Json::array();
        for (const auto& [m, v] : J.snapshot())
            entries.push_back(Json{{"rep", mat_to_json(m)}, {"value", cyc_to_json(v)}});
        Json j{{"format_version", format_version},
               {"field", field_to_json(*J.rep().field())},
               {"n", J.rep().n()},
               {"orbit", J.rep().orbit()},
               {"twist", J.psi().twist},
               {"sign", J.psi().sign},
               {"entries", entries}};
        write_file(bessel_table_path(J), j);
    }

private:
    std::string char_table_path(const CuspidalRep& rep) const {
        return dir_ + "/ct_p" + std::to_string(rep.field()->p()) + "_f" +
               std::to_string(rep.field()->f()) + "_n" + std::to_string(rep.n()) + "_k" +
               std::to_string(rep.theta_exponent()) + ".json";
    }

    std::string bessel_table_path(const BesselFn& J) const {
        return dir_ + "/bt_p" + std::to_string(J.rep().field()->p()) + "_f" +
               std::to_string(J.rep().field()->f()) + "_n" + std::to_string(J.rep().n()) + "_k" +
               std::to_string(J.rep().theta_exponent()) + "_t" + std::to_string(J.psi().twist) +
               (J.psi().sign > 0 ? "_sp" : "_sm") + ".json";
    }

    static bool stamp_ok(const Json& j, const FieldSpec& F) {
        if (j.value("format_version", -1) != format_version) return false;
        const auto& fj = j.at("field");
        return fj.at("p").get<long>() == F.p() && fj.at("f").get<int>() == F.f() &&
               fj.at("modulus").get<std::vector<long>>() == F.modulus();
    }

    static bool read_file(const std::string& path, Json& out) {
        std::ifstream in(path);
        if (!in) return false;
        try {
            in >> out;
        } catch (const Json::exception&) {
            return false;
        }
        return true;
    }

    static void write_file(const std::string& path, const Json& j) {
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            out << j.dump();
        }
        std::filesystem::rename(tmp, path);
    }

    std::string dir_;
};

}  // namespace cuspgamma
