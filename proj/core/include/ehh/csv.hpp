#ifndef EHH_CSV_HPP
#define EHH_CSV_HPP

#include <string>

#include "ehh/narx.hpp"

namespace ehh {

struct CsvColumns {
    int input = 0;   // column index of u
    int output = 1;  // column index of y
};

// Comma-separated input/output record. An optional single header row is
// detected by the mapped cells failing to parse as numbers. Reports the
// 1-based line number on bad cells.
IoData load_csv(const std::string& path, const CsvColumns& columns = {});

// Writes "u,y" with full round-trip precision.
void save_csv(const std::string& path, const IoData& data);

}  // namespace ehh

#endif  // EHH_CSV_HPP
