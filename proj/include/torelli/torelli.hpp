#pragma once

#include <torelli/chain.hpp>
#include <torelli/enumeration.hpp>
#include <torelli/json_io.hpp>
#include <torelli/period.hpp>
#include <torelli/twistor.hpp>
#include <torelli/verify.hpp>
#include <torelli/weyl.hpp>
