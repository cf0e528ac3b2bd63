import { ApiClient } from './api.js';
import { formatNumber, formatPercent, percentileColor } from './color.js';
import { COMMIT_DEBOUNCE_MS, LatestWins, debounce } from './debounce.js';
import { MAX_WEIGHT, MIN_WEIGHT, WeightState, initialState, relativeWeights, setWeight } from './state.js';
import type { Meta, RankResponse } from './types.js';

export interface WorkbenchOptions {
  debounceMs?: number;
  onWeightsCommitted?: (weights: number[]) => void;
}

/** Relative-weight sliders with live re-ranking and a divergence badge.
 *
 * Every number shown (scores, percentiles, divergence) is copied from the
 * service response; the view never derives values itself.
 */
export class WeightWorkbench {
  state: WeightState;
  year: number;

  private readonly latest = new LatestWins();
  private readonly scheduleCommit: () => void;
  private readonly valueLabels: HTMLElement[] = [];
  private readonly sliders: HTMLInputElement[] = [];
  private readonly badge: HTMLElement;
  private readonly banner: HTMLElement;
  private readonly tableBody: HTMLElement;
  private readonly yearSelect: HTMLSelectElement;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    private readonly meta: Meta,
    private readonly options: WorkbenchOptions = {},
  ) {
    this.state = initialState(
      meta.criteria.map((c) => c.id),
      meta.criteria.map((c) => c.relative_weight),
    );
    this.year = meta.years[meta.years.length - 1];
    this.scheduleCommit = debounce(options.debounceMs ?? COMMIT_DEBOUNCE_MS, () => {
      void this.commit();
    });

    root.innerHTML = '';
    this.banner = el('div', 'banner hidden');
    this.banner.dataset.testid = 'connection-banner';
    this.banner.textContent = 'service unreachable — showing last known ranking';
    root.appendChild(this.banner);

    const controls = el('div', 'controls');
    const yearLabel = el('label', 'year-label');
    yearLabel.textContent = 'year ';
    this.yearSelect = document.createElement('select');
    this.yearSelect.dataset.testid = 'year-select';
    for (const year of meta.years) {
      const option = document.createElement('option');
      option.value = String(year);
      option.textContent = String(year);
      this.yearSelect.appendChild(option);
    }
    this.yearSelect.value = String(this.year);
    this.yearSelect.addEventListener('change', () => {
      this.year = Number(this.yearSelect.value);
      void this.commit();
    });
    yearLabel.appendChild(this.yearSelect);
    controls.appendChild(yearLabel);

    this.badge = el('span', 'badge');
    this.badge.dataset.testid = 'divergence-badge';
    this.badge.textContent = 'divergence —';
    controls.appendChild(this.badge);
    root.appendChild(controls);

    const sliderBox = el('div', 'sliders');
    this.meta.criteria.forEach((criterion, index) => {
      const row = el('div', 'slider-row');
      const name = el('span', 'slider-name');
      name.textContent = `${criterion.id} (${criterion.direction})`;
      name.title = criterion.label;
      row.appendChild(name);

      const slider = document.createElement('input');
      slider.type = 'range';
      slider.min = String(MIN_WEIGHT);
      slider.max = String(MAX_WEIGHT);
      slider.step = '0.1';
      slider.value = String(this.state.weights[index]);
      slider.dataset.testid = `slider-${criterion.id}`;
      slider.addEventListener('input', () => this.onSliderInput(index, Number(slider.value)));
      row.appendChild(slider);

      const value = el('span', 'slider-value');
      value.dataset.testid = `weight-${criterion.id}`;
      value.textContent = formatNumber(this.state.weights[index], 1);
      row.appendChild(value);

      this.sliders.push(slider);
      this.valueLabels.push(value);
      sliderBox.appendChild(row);
    });
    root.appendChild(sliderBox);

    const table = el('table', 'ranking');
    const head = el('thead');
    head.innerHTML = '<tr><th>#</th><th>program</th><th>score</th><th>percentile</th></tr>';
    table.appendChild(head);
    this.tableBody = el('tbody');
    this.tableBody.dataset.testid = 'ranking-body';
    table.appendChild(this.tableBody);
    root.appendChild(table);
  }

  private onSliderInput(index: number, raw: number): void {
    const { state, clamped } = setWeight(this.state, index, raw);
    this.state = state;
    const label = this.valueLabels[index];
    label.textContent = formatNumber(this.state.weights[index], 1);
    label.classList.toggle('clamped', clamped);
    this.sliders[index].value = String(this.state.weights[index]);
    this.scheduleCommit();
  }

  /** Programmatic slider move (also used by tests); commits through the same path. */
  setSlider(criterionId: string, value: number): void {
    const index = this.state.ids.indexOf(criterionId);
    if (index < 0) throw new Error(`unknown criterion ${criterionId}`);
    this.sliders[index].value = String(value);
    this.onSliderInput(index, value);
  }

  async commit(): Promise<void> {
    const weights = relativeWeights(this.state);
    const response = await this.latest.run((signal) => this.api.rank(this.year, weights, signal)).catch(() => {
      this.banner.classList.remove('hidden');
      return null;
    });
    if (response === null) return;
    this.banner.classList.add('hidden');
    this.render(response);
    this.options.onWeightsCommitted?.(weights);
  }

  private render(response: RankResponse): void {
    this.badge.textContent = `divergence ${formatNumber(response.distance_to_default, 3)}`;
    this.badge.classList.toggle('nonzero', response.distance_to_default !== 0);
    this.tableBody.innerHTML = '';
    for (const row of response.ranking) {
      const tr = document.createElement('tr');
      tr.dataset.alternative = row.alternative;
      const cells = [
        String(row.rank),
        row.alternative,
        formatNumber(row.score, 4),
        formatPercent(row.percentile),
      ];
      cells.forEach((text, k) => {
        const td = document.createElement('td');
        td.textContent = text;
        if (k === 3) td.style.background = percentileColor(row.percentile);
        tr.appendChild(td);
      });
      this.tableBody.appendChild(tr);
    }
  }

  /** Program ids as currently displayed, best first. */
  displayedOrder(): string[] {
    return Array.from(this.tableBody.querySelectorAll('tr')).map((tr) => tr.dataset.alternative ?? '');
  }

  displayedDivergence(): string {
    return this.badge.textContent ?? '';
  }
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}
