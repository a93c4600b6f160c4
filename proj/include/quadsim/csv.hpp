#pragma once

#include <string>

#include "quadsim/sim.hpp"

namespace quadsim {

// Fixed 34-column log schema. Columns: time, true state (12), estimated
// state (12), position/yaw reference (4), applied commands (4), top sliding
// surface. Estimated-state columns carry an "h" suffix (xh = x-hat).
inline constexpr const char* kCsvHeader =
    "t,x,y,z,phi,theta,psi,vx,vy,vz,dphi,dtheta,dpsi,"
    "xh,yh,zh,phih,thetah,psih,vxh,vyh,vzh,dphih,dthetah,dpsih,"
    "xr,yr,zr,psir,Fz,C1,C2,C3,S_top";

// Writes the log with the exact header above, one row per line,
// round-trip-precise doubles ("%.17g"), LF line endings.
// Throws IoError when the file cannot be opened or written.
void write_csv(const TimeSeriesLog& log, const std::string& path);

// Reads a file written by write_csv. Throws IoError when the file cannot be
// opened, SchemaMismatch when the header line differs from kCsvHeader or a
// row does not have exactly 34 numeric fields.
TimeSeriesLog read_csv(const std::string& path);

}  // namespace quadsim
