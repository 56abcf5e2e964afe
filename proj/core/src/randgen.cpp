#include "odfkit/formula.hpp"
