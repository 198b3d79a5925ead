#pragma once

#include "curtainlab/curtains/audits.hpp"
#include "curtainlab/curtains/curtain.hpp"
#include "curtainlab/curtains/separation.hpp"
