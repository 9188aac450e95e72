#pragma once

#include <exception>
#include <ostream>

#include "wavecast/errors.hpp"

namespace wavecast::cli {

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kNumerical;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kUsage;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const ShapeError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace wavecast::cli
