#pragma once

#include "pasv/passify.hpp"
#include "pasv/state_space.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace pasv {

/// On-disk model description; JSON with kind "ss", "tf" or "tfm".
struct ModelFile {
    enum class Kind { ss, tf, tfm };

    Kind        kind = Kind::ss;
    std::string name;

    RealMatrix A, B, C, D;                            // ss
    std::vector<double> num, den;                     // tf
    std::vector<std::vector<RationalEntry>> entries;  // tfm

    Realization realize() const;
    static ModelFile from_realization(const Realization& r, std::string name);
};

ModelFile   load_model(const std::string& path);
ModelFile   parse_model(const std::string& json_text);
std::string model_to_json(const ModelFile& m);
void        save_model(const ModelFile& m, const std::string& path);

std::string passivation_report_json(const PassivationResult& result);
std::string passivation_report_json(const PassivationResult& result,
                                    const ReduceReport& reduce_report, int reduced_states);
std::string dissipation_report_json(const DissipationReport& report);
std::string approximant_json(const RampApproximant& f);

/// CSV sweep: omega, re_ij/im_ij per entry (row-major), lambda_min of
/// H(iw) + H(iw)^H. Frequencies landing on poles become comment rows.
void write_sweep_csv(std::ostream& os, const Realization& r, const FrequencyGrid& grid);

/// CSV of the pointwise relative error ||G(iw) - H(iw)||_2 / ||H(iw)||_2.
void write_compare_csv(std::ostream& os, const Realization& h, const Realization& g,
                       const FrequencyGrid& grid);

} // namespace pasv
