#pragma once

#include "deconv/experiments.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace deconv::csv {

//! Shortest round-trip decimal form, locale independent; "nan", "inf".
std::string format_double(double v);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

//! density,noise,n,s2n,mean,median,sd,reps
void write_mise_table(std::ostream& out, const MiseTable& table);

//! density,noise,n,s2n,ratio,mean_num,mean_den,reps
void write_ratio_table(std::ostream& out, const RatioTable& table);

} // namespace deconv::csv
