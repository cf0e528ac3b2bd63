import { ApiClient } from './api.js';
import { PercentileHeatmap } from './heatmap.js';
import { SensitivityView } from './sensitivity.js';
import { WeightWorkbench } from './workbench.js';

declare global {
  interface Window {
    VETRANK_API?: string;
  }
}

export async function boot(doc: Document = document): Promise<void> {
  const api = new ApiClient(window.VETRANK_API ?? '');
  const meta = await api.meta();

  const workbenchHost = doc.getElementById('workbench');
  const sensitivityHost = doc.getElementById('sensitivity');
  const heatmapHost = doc.getElementById('heatmap');
  if (!workbenchHost || !sensitivityHost || !heatmapHost) {
    throw new Error('missing app containers');
  }

  const sensitivity = new SensitivityView(sensitivityHost, api, meta);
  const heatmap = new PercentileHeatmap(heatmapHost, api, meta);
  const workbench = new WeightWorkbench(workbenchHost, api, meta, {
    onWeightsCommitted: (weights) => {
      void sensitivity.updateWeights(weights);
      void heatmap.updateWeights(weights);
    },
  });

  await sensitivity.init();
  await workbench.commit();
}

if (typeof document !== 'undefined' && document.getElementById('workbench')) {
  boot().catch((error) => {
    console.error(error);
    const banner = document.createElement('div');
    banner.className = 'banner';
    banner.textContent = `failed to reach the ranking service: ${error}`;
    document.body.prepend(banner);
  });
}
