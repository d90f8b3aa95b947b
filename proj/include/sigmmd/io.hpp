#ifndef SIGMMD_IO_HPP
#define SIGMMD_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sigmmd/signature.hpp"

namespace sigmmd {

/*
 * Dataset CSV: header `sample_id,t,x1,...,xd`, one row per observation,
 * rows sorted by (sample_id, t), numbers written with 17 significant digits
 * so that a write/read cycle is lossless.
 */
void write_dataset_csv(std::ostream& out, const std::vector<PathSample>& samples);
void write_dataset_csv(const std::string& path, const std::vector<PathSample>& samples);

std::vector<PathSample> read_dataset_csv(std::istream& in);
std::vector<PathSample> read_dataset_csv(const std::string& path);

} // namespace sigmmd

#endif
