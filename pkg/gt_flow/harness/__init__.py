from gt_flow.harness.named import verify
from gt_flow.harness.named import converge_kernel
from gt_flow.harness.named import converge_density
from gt_flow.harness.named import mc_correlations
from gt_flow.harness.named import spectrum
from gt_flow.harness.named import export_paths
