#pragma once

#include <stdexcept>
#include <string>

namespace asymlab {

//! Base class for all library errors. The exit code is what the CLI returns
//! when the error escapes a command.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

//! Unusable data: unreadable files, degenerate samples, too few rows.
class InputError : public Error
{
public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

//! Invalid configuration or unknown identifiers.
class ConfigError : public Error
{
public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

//! A numerical routine produced an inconsistent result.
class NumericError : public Error
{
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

} // namespace asymlab
